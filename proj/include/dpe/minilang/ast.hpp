#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dpe/minilang/value.hpp"

namespace dpe::minilang {

enum class Type { int_t, bool_t, str_t, int_array_t };

inline const char* type_name(Type t) {
    switch (t) {
    case Type::int_t: return "int";
    case Type::bool_t: return "bool";
    case Type::str_t: return "str";
    case Type::int_array_t: return "int[]";
    }
    return "?";
}

enum class BinOp { add, sub, mul, div, mod, eq, ne, lt, le, gt, ge, and_, or_ };
enum class UnOp { neg, not_ };
enum class AssignOp { set, add, sub, mul, div };

inline const char* binop_text(BinOp op) {
    switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    case BinOp::mod: return "%";
    case BinOp::eq: return "==";
    case BinOp::ne: return "!=";
    case BinOp::lt: return "<";
    case BinOp::le: return "<=";
    case BinOp::gt: return ">";
    case BinOp::ge: return ">=";
    case BinOp::and_: return "&&";
    case BinOp::or_: return "||";
    }
    return "?";
}

inline const char* assignop_text(AssignOp op) {
    switch (op) {
    case AssignOp::set: return "=";
    case AssignOp::add: return "+=";
    case AssignOp::sub: return "-=";
    case AssignOp::mul: return "*=";
    case AssignOp::div: return "/=";
    }
    return "?";
}

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind {
        int_lit,    // int_val
        neg_inf,    // the -inf literal
        bool_lit,   // bool_val
        str_lit,    // str_val
        array_lit,  // args = elements
        var,        // name
        index,      // name = base identifier, args[0] = index expr
        unary,      // un_op, args[0]
        binary,     // bin_op, args[0], args[1]
        call,       // name = builtin, args
    };

    Kind kind;
    Int int_val = 0;
    bool bool_val = false;
    std::string str_val;
    std::string name;
    BinOp bin_op = BinOp::add;
    UnOp un_op = UnOp::neg;
    std::vector<ExprPtr> args;
    int line = -1;
    int column = -1;

    static ExprPtr make(Kind k) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        return e;
    }
    static ExprPtr int_lit(Int v) {
        auto e = make(Kind::int_lit);
        e->int_val = v;
        return e;
    }
    static ExprPtr neg_inf_lit() { return make(Kind::neg_inf); }
    static ExprPtr bool_lit(bool v) {
        auto e = make(Kind::bool_lit);
        e->bool_val = v;
        return e;
    }
    static ExprPtr str_lit(std::string v) {
        auto e = make(Kind::str_lit);
        e->str_val = std::move(v);
        return e;
    }
    static ExprPtr var(std::string n) {
        auto e = make(Kind::var);
        e->name = std::move(n);
        return e;
    }
    static ExprPtr index(std::string base, ExprPtr idx) {
        auto e = make(Kind::index);
        e->name = std::move(base);
        e->args.push_back(std::move(idx));
        return e;
    }
    static ExprPtr unary(UnOp op, ExprPtr a) {
        auto e = make(Kind::unary);
        e->un_op = op;
        e->args.push_back(std::move(a));
        return e;
    }
    static ExprPtr binary(BinOp op, ExprPtr a, ExprPtr b) {
        auto e = make(Kind::binary);
        e->bin_op = op;
        e->args.push_back(std::move(a));
        e->args.push_back(std::move(b));
        return e;
    }
    static ExprPtr call(std::string builtin, std::vector<ExprPtr> as) {
        auto e = make(Kind::call);
        e->name = std::move(builtin);
        e->args = std::move(as);
        return e;
    }

    ExprPtr clone() const {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        e->int_val = int_val;
        e->bool_val = bool_val;
        e->str_val = str_val;
        e->name = name;
        e->bin_op = bin_op;
        e->un_op = un_op;
        e->line = line;
        e->column = column;
        for (const auto& a : args) e->args.push_back(a->clone());
        return e;
    }
};

inline bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::int_lit: return a.int_val == b.int_val;
    case Expr::Kind::neg_inf: return true;
    case Expr::Kind::bool_lit: return a.bool_val == b.bool_val;
    case Expr::Kind::str_lit: return a.str_val == b.str_val;
    case Expr::Kind::var: return a.name == b.name;
    case Expr::Kind::index:
    case Expr::Kind::call: break;
    case Expr::Kind::unary:
        if (a.un_op != b.un_op) return false;
        break;
    case Expr::Kind::binary:
        if (a.bin_op != b.bin_op) return false;
        break;
    case Expr::Kind::array_lit: break;
    }
    if (a.name != b.name) return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!expr_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct LValue {
    std::string var;
    ExprPtr index; // null for plain variables
};

struct Stmt {
    enum class Kind { declare, assign, if_s, while_s, for_s, foreach_s, call, ret };

    Kind kind;
    int id = -1;

    // declare
    Type decl_type = Type::int_t;
    std::string var;       // declare target / foreach variable
    ExprPtr init;          // declare initializer (may be null)

    // assign
    LValue lvalue;
    AssignOp assign_op = AssignOp::set;
    ExprPtr value;

    // control
    ExprPtr cond;          // if / while / for condition
    StmtPtr for_init;      // declare or assign, no trailing semicolon
    StmtPtr for_update;    // assign
    ExprPtr seq;           // foreach sequence expression
    Block body;            // if-then / loop body
    Block else_body;       // if only

    // call statement
    std::string callee;
    std::vector<ExprPtr> args;

    // return
    ExprPtr ret_value;     // may be null

    int line = -1;
    int column = -1;

    static StmtPtr make(Kind k) {
        auto s = std::make_unique<Stmt>();
        s->kind = k;
        return s;
    }

    StmtPtr clone() const {
        auto s = std::make_unique<Stmt>();
        s->kind = kind;
        s->id = id;
        s->decl_type = decl_type;
        s->var = var;
        s->init = init ? init->clone() : nullptr;
        s->lvalue.var = lvalue.var;
        s->lvalue.index = lvalue.index ? lvalue.index->clone() : nullptr;
        s->assign_op = assign_op;
        s->value = value ? value->clone() : nullptr;
        s->cond = cond ? cond->clone() : nullptr;
        s->for_init = for_init ? for_init->clone() : nullptr;
        s->for_update = for_update ? for_update->clone() : nullptr;
        s->seq = seq ? seq->clone() : nullptr;
        for (const auto& b : body) s->body.push_back(b->clone());
        for (const auto& b : else_body) s->else_body.push_back(b->clone());
        s->callee = callee;
        for (const auto& a : args) s->args.push_back(a->clone());
        s->ret_value = ret_value ? ret_value->clone() : nullptr;
        s->line = line;
        s->column = column;
        return s;
    }
};

inline bool stmt_equal(const Stmt& a, const Stmt& b);

inline bool block_equal(const Block& a, const Block& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!stmt_equal(*a[i], *b[i])) return false;
    return true;
}

inline bool opt_expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return expr_equal(*a, *b);
}

// Structural equality; statement ids and source locations are ignored.
inline bool stmt_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Stmt::Kind::declare:
        return a.decl_type == b.decl_type && a.var == b.var && opt_expr_equal(a.init, b.init);
    case Stmt::Kind::assign:
        return a.lvalue.var == b.lvalue.var && opt_expr_equal(a.lvalue.index, b.lvalue.index) &&
               a.assign_op == b.assign_op && expr_equal(*a.value, *b.value);
    case Stmt::Kind::if_s:
        return expr_equal(*a.cond, *b.cond) && block_equal(a.body, b.body) &&
               block_equal(a.else_body, b.else_body);
    case Stmt::Kind::while_s:
        return expr_equal(*a.cond, *b.cond) && block_equal(a.body, b.body);
    case Stmt::Kind::for_s:
        return stmt_equal(*a.for_init, *b.for_init) && expr_equal(*a.cond, *b.cond) &&
               stmt_equal(*a.for_update, *b.for_update) && block_equal(a.body, b.body);
    case Stmt::Kind::foreach_s:
        return a.var == b.var && expr_equal(*a.seq, *b.seq) && block_equal(a.body, b.body);
    case Stmt::Kind::call: {
        if (a.callee != b.callee || a.args.size() != b.args.size()) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!expr_equal(*a.args[i], *b.args[i])) return false;
        return true;
    }
    case Stmt::Kind::ret:
        return opt_expr_equal(a.ret_value, b.ret_value);
    }
    return false;
}

struct Param {
    std::string name;
    Type type = Type::int_t;
    bool read_only = true; // true when the body never writes the parameter
};

struct SourceLoc {
    int line = -1;
    int column = -1;
};

struct Program {
    std::string name;
    std::vector<Param> params;
    Block body;
    std::map<int, SourceLoc> source_span; // statement id -> location

    Program() = default;
    Program(const Program& o) { *this = o; }
    Program& operator=(const Program& o) {
        if (this == &o) return *this;
        name = o.name;
        params = o.params;
        body.clear();
        for (const auto& s : o.body) body.push_back(s->clone());
        source_span = o.source_span;
        return *this;
    }
    Program(Program&&) = default;
    Program& operator=(Program&&) = default;
};

inline bool program_equal(const Program& a, const Program& b) {
    if (a.name != b.name || a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type)
            return false;
    }
    return block_equal(a.body, b.body);
}

namespace detail {
inline void number_stmt(Stmt& s, int& next, std::map<int, SourceLoc>& spans) {
    s.id = next++;
    spans[s.id] = SourceLoc{s.line, s.column};
    if (s.kind == Stmt::Kind::for_s) {
        number_stmt(*s.for_init, next, spans);
        number_stmt(*s.for_update, next, spans);
    }
    for (auto& c : s.body) number_stmt(*c, next, spans);
    for (auto& c : s.else_body) number_stmt(*c, next, spans);
}
} // namespace detail

// Assigns statement ids in pre-order (a for statement is followed by its
// init, then its update, then the body) and rebuilds the span map.
inline void renumber_statements(Program& p) {
    p.source_span.clear();
    int next = 0;
    for (auto& s : p.body) detail::number_stmt(*s, next, p.source_span);
}

// Visit every statement in pre-order (same order as ids).
template <typename F>
void for_each_stmt(Block& block, F&& f) {
    for (auto& s : block) {
        f(*s);
        if (s->kind == Stmt::Kind::for_s) {
            f(*s->for_init);
            f(*s->for_update);
        }
        for_each_stmt(s->body, f);
        for_each_stmt(s->else_body, f);
    }
}

template <typename F>
void for_each_stmt(const Block& block, F&& f) {
    for (const auto& s : block) {
        f(*s);
        if (s->kind == Stmt::Kind::for_s) {
            f(*s->for_init);
            f(*s->for_update);
        }
        for_each_stmt(s->body, f);
        for_each_stmt(s->else_body, f);
    }
}

} // namespace dpe::minilang
