#pragma once

#include <set>
#include <string>
#include <vector>

#include "dpe/minilang/ast.hpp"
#include "dpe/minilang/lexer.hpp"

namespace dpe::minilang {

inline bool is_stmt_builtin(const std::string& n) {
    return n == "print" || n == "append" || n == "swap";
}
inline bool is_expr_builtin(const std::string& n) { return n == "len"; }

namespace detail {

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program parse_program() {
        Program p;
        expect_keyword("fn");
        p.name = expect(Token::Kind::ident).text;
        expect_punct("(");
        if (!peek_punct(")")) {
            for (;;) {
                Param prm;
                prm.type = parse_type();
                prm.name = expect(Token::Kind::ident).text;
                p.params.push_back(std::move(prm));
                if (!accept_punct(",")) break;
            }
        }
        expect_punct(")");
        p.body = parse_block();
        if (cur().kind != Token::Kind::eof)
            err("trailing input after function body");
        return p;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void err(const std::string& msg) const {
        fail(errc::syntax_error, msg + " (got '" + cur().text + "')", cur().line, cur().column);
    }

    const Token& expect(Token::Kind k) {
        if (cur().kind != k) err("unexpected token");
        return next();
    }
    void expect_punct(const std::string& t) {
        if (cur().kind != Token::Kind::punct || cur().text != t) err("expected '" + t + "'");
        next();
    }
    void expect_keyword(const std::string& t) {
        if (cur().kind != Token::Kind::keyword || cur().text != t) err("expected '" + t + "'");
        next();
    }
    bool peek_punct(const std::string& t) const {
        return cur().kind == Token::Kind::punct && cur().text == t;
    }
    bool peek_keyword(const std::string& t) const {
        return cur().kind == Token::Kind::keyword && cur().text == t;
    }
    bool accept_punct(const std::string& t) {
        if (peek_punct(t)) {
            next();
            return true;
        }
        return false;
    }

    bool peek_type() const {
        return peek_keyword("int") || peek_keyword("bool") || peek_keyword("str");
    }

    Type parse_type() {
        if (peek_keyword("bool")) {
            next();
            return Type::bool_t;
        }
        if (peek_keyword("str")) {
            next();
            return Type::str_t;
        }
        if (peek_keyword("int")) {
            next();
            if (accept_punct("[")) {
                expect_punct("]");
                return Type::int_array_t;
            }
            return Type::int_t;
        }
        err("expected type");
    }

    Block parse_block() {
        expect_punct("{");
        Block b;
        while (!peek_punct("}")) b.push_back(parse_stmt());
        expect_punct("}");
        return b;
    }

    StmtPtr parse_stmt() {
        int line = cur().line, column = cur().column;
        StmtPtr s;
        if (peek_type()) {
            s = parse_declare();
            expect_punct(";");
        } else if (peek_keyword("if")) {
            s = parse_if();
        } else if (peek_keyword("while")) {
            s = Stmt::make(Stmt::Kind::while_s);
            next();
            expect_punct("(");
            s->cond = parse_expr();
            expect_punct(")");
            s->body = parse_block();
        } else if (peek_keyword("for")) {
            s = parse_for();
        } else if (peek_keyword("return")) {
            s = Stmt::make(Stmt::Kind::ret);
            next();
            if (!peek_punct(";")) s->ret_value = parse_expr();
            expect_punct(";");
        } else if (cur().kind == Token::Kind::ident) {
            // Call statement or assignment.
            if (toks_[pos_ + 1].kind == Token::Kind::punct && toks_[pos_ + 1].text == "(") {
                s = Stmt::make(Stmt::Kind::call);
                s->callee = next().text;
                if (!is_stmt_builtin(s->callee))
                    fail(errc::syntax_error, "unknown builtin '" + s->callee + "'", line, column);
                expect_punct("(");
                if (!peek_punct(")")) {
                    for (;;) {
                        s->args.push_back(parse_expr());
                        if (!accept_punct(",")) break;
                    }
                }
                expect_punct(")");
                expect_punct(";");
            } else {
                s = parse_assign();
                expect_punct(";");
            }
        } else {
            err("expected statement");
        }
        s->line = line;
        s->column = column;
        return s;
    }

    StmtPtr parse_declare() {
        auto s = Stmt::make(Stmt::Kind::declare);
        s->line = cur().line;
        s->column = cur().column;
        s->decl_type = parse_type();
        s->var = expect(Token::Kind::ident).text;
        if (accept_punct("=")) s->init = parse_expr();
        return s;
    }

    StmtPtr parse_assign() {
        auto s = Stmt::make(Stmt::Kind::assign);
        s->line = cur().line;
        s->column = cur().column;
        s->lvalue.var = expect(Token::Kind::ident).text;
        if (accept_punct("[")) {
            s->lvalue.index = parse_expr();
            expect_punct("]");
        }
        if (peek_punct("=")) s->assign_op = AssignOp::set;
        else if (peek_punct("+=")) s->assign_op = AssignOp::add;
        else if (peek_punct("-=")) s->assign_op = AssignOp::sub;
        else if (peek_punct("*=")) s->assign_op = AssignOp::mul;
        else if (peek_punct("/=")) s->assign_op = AssignOp::div;
        else err("expected assignment operator");
        next();
        s->value = parse_expr();
        return s;
    }

    StmtPtr parse_if() {
        auto s = Stmt::make(Stmt::Kind::if_s);
        s->line = cur().line;
        s->column = cur().column;
        expect_keyword("if");
        expect_punct("(");
        s->cond = parse_expr();
        expect_punct(")");
        s->body = parse_block();
        if (peek_keyword("else")) {
            next();
            if (peek_keyword("if")) {
                s->else_body.push_back(parse_if());
            } else {
                s->else_body = parse_block();
            }
        }
        return s;
    }

    StmtPtr parse_for() {
        int line = cur().line, column = cur().column;
        expect_keyword("for");
        expect_punct("(");
        // Distinguish a foreach header "for (x in e)" from a C-style header.
        if (cur().kind == Token::Kind::ident && toks_[pos_ + 1].kind == Token::Kind::keyword &&
            toks_[pos_ + 1].text == "in") {
            auto s = Stmt::make(Stmt::Kind::foreach_s);
            s->line = line;
            s->column = column;
            s->var = next().text;
            next(); // in
            s->seq = parse_expr();
            expect_punct(")");
            s->body = parse_block();
            return s;
        }
        auto s = Stmt::make(Stmt::Kind::for_s);
        s->line = line;
        s->column = column;
        s->for_init = peek_type() ? parse_declare() : parse_assign();
        expect_punct(";");
        s->cond = parse_expr();
        expect_punct(";");
        s->for_update = parse_assign();
        expect_punct(")");
        s->body = parse_block();
        return s;
    }

    // Precedence climbing: || < && < ==/!= < relational < additive <
    // multiplicative < unary < postfix.
    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        auto lhs = parse_and();
        while (peek_punct("||")) {
            next();
            lhs = Expr::binary(BinOp::or_, std::move(lhs), parse_and());
        }
        return lhs;
    }
    ExprPtr parse_and() {
        auto lhs = parse_equality();
        while (peek_punct("&&")) {
            next();
            lhs = Expr::binary(BinOp::and_, std::move(lhs), parse_equality());
        }
        return lhs;
    }
    ExprPtr parse_equality() {
        auto lhs = parse_relational();
        for (;;) {
            if (peek_punct("==")) {
                next();
                lhs = Expr::binary(BinOp::eq, std::move(lhs), parse_relational());
            } else if (peek_punct("!=")) {
                next();
                lhs = Expr::binary(BinOp::ne, std::move(lhs), parse_relational());
            } else {
                return lhs;
            }
        }
    }
    ExprPtr parse_relational() {
        auto lhs = parse_additive();
        for (;;) {
            BinOp op;
            if (peek_punct("<")) op = BinOp::lt;
            else if (peek_punct("<=")) op = BinOp::le;
            else if (peek_punct(">")) op = BinOp::gt;
            else if (peek_punct(">=")) op = BinOp::ge;
            else return lhs;
            next();
            lhs = Expr::binary(op, std::move(lhs), parse_additive());
        }
    }
    ExprPtr parse_additive() {
        auto lhs = parse_multiplicative();
        for (;;) {
            if (peek_punct("+")) {
                next();
                lhs = Expr::binary(BinOp::add, std::move(lhs), parse_multiplicative());
            } else if (peek_punct("-")) {
                next();
                lhs = Expr::binary(BinOp::sub, std::move(lhs), parse_multiplicative());
            } else {
                return lhs;
            }
        }
    }
    ExprPtr parse_multiplicative() {
        auto lhs = parse_unary();
        for (;;) {
            BinOp op;
            if (peek_punct("*")) op = BinOp::mul;
            else if (peek_punct("/")) op = BinOp::div;
            else if (peek_punct("%")) op = BinOp::mod;
            else return lhs;
            next();
            lhs = Expr::binary(op, std::move(lhs), parse_unary());
        }
    }
    ExprPtr parse_unary() {
        if (peek_punct("-")) {
            next();
            if (peek_keyword("inf")) {
                next();
                return Expr::neg_inf_lit();
            }
            if (cur().kind == Token::Kind::int_lit) {
                // Fold into a negative literal so -5 round-trips unchanged.
                auto tok = next();
                return Expr::int_lit(-parse_int_text(tok));
            }
            return Expr::unary(UnOp::neg, parse_unary());
        }
        if (peek_punct("!")) {
            next();
            return Expr::unary(UnOp::not_, parse_unary());
        }
        return parse_primary();
    }

    Int parse_int_text(const Token& tok) {
        // Fits-in-int64 check; the most negative value is only reachable
        // through -inf.
        if (tok.text.size() > 19) fail(errc::syntax_error, "integer literal overflow", tok.line, tok.column);
        unsigned long long v = std::stoull(tok.text);
        if (v > 9223372036854775807ULL)
            fail(errc::syntax_error, "integer literal overflow", tok.line, tok.column);
        return static_cast<Int>(v);
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        if (t.kind == Token::Kind::int_lit) {
            auto tok = next();
            return Expr::int_lit(parse_int_text(tok));
        }
        if (t.kind == Token::Kind::str_lit) return Expr::str_lit(next().text);
        if (peek_keyword("true")) {
            next();
            return Expr::bool_lit(true);
        }
        if (peek_keyword("false")) {
            next();
            return Expr::bool_lit(false);
        }
        if (peek_keyword("inf"))
            fail(errc::syntax_error, "'inf' is only valid as '-inf'", t.line, t.column);
        if (accept_punct("(")) {
            auto e = parse_expr();
            expect_punct(")");
            return e;
        }
        if (accept_punct("[")) {
            auto e = Expr::make(Expr::Kind::array_lit);
            if (!peek_punct("]")) {
                for (;;) {
                    e->args.push_back(parse_expr());
                    if (!accept_punct(",")) break;
                }
            }
            expect_punct("]");
            return e;
        }
        if (t.kind == Token::Kind::ident) {
            std::string name = next().text;
            if (peek_punct("(")) {
                if (!is_expr_builtin(name))
                    fail(errc::syntax_error, "unknown builtin '" + name + "' in expression",
                         t.line, t.column);
                next();
                std::vector<ExprPtr> args;
                if (!peek_punct(")")) {
                    for (;;) {
                        args.push_back(parse_expr());
                        if (!accept_punct(",")) break;
                    }
                }
                expect_punct(")");
                return Expr::call(name, std::move(args));
            }
            if (accept_punct("[")) {
                auto idx = parse_expr();
                expect_punct("]");
                return Expr::index(name, std::move(idx));
            }
            return Expr::var(name);
        }
        err("expected expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// Scope-checking walk: every referenced identifier must be declared before
// use, and names are unique within one function.
class Checker {
public:
    explicit Checker(const Program& p) : prog_(p) {}

    void run() {
        std::vector<std::string> scope;
        for (const auto& prm : prog_.params) {
            declare(prm.name, -1, -1);
            scope.push_back(prm.name);
        }
        check_block(prog_.body, scope);
    }

private:
    void declare(const std::string& name, int line, int col) {
        if (!all_names_.insert(name).second)
            fail(errc::syntax_error, "redeclaration of '" + name + "'", line, col);
    }

    static bool visible(const std::vector<std::string>& scope, const std::string& name) {
        for (const auto& n : scope)
            if (n == name) return true;
        return false;
    }

    void check_expr(const Expr& e, const std::vector<std::string>& scope, int line, int col) {
        switch (e.kind) {
        case Expr::Kind::var:
        case Expr::Kind::index:
            if (!visible(scope, e.name))
                fail(errc::undeclared_variable, "use of undeclared '" + e.name + "'", line, col);
            break;
        case Expr::Kind::call:
            if (e.args.size() != 1)
                fail(errc::syntax_error, "len takes one argument", line, col);
            break;
        default:
            break;
        }
        for (const auto& a : e.args) check_expr(*a, scope, line, col);
    }

    void check_stmt(const Stmt& s, std::vector<std::string>& scope) {
        switch (s.kind) {
        case Stmt::Kind::declare:
            if (s.init) check_expr(*s.init, scope, s.line, s.column);
            declare(s.var, s.line, s.column);
            scope.push_back(s.var);
            break;
        case Stmt::Kind::assign:
            if (!visible(scope, s.lvalue.var))
                fail(errc::undeclared_variable, "assignment to undeclared '" + s.lvalue.var + "'",
                     s.line, s.column);
            if (s.lvalue.index) check_expr(*s.lvalue.index, scope, s.line, s.column);
            check_expr(*s.value, scope, s.line, s.column);
            break;
        case Stmt::Kind::if_s: {
            check_expr(*s.cond, scope, s.line, s.column);
            auto inner = scope;
            check_block(s.body, inner);
            auto inner2 = scope;
            check_block(s.else_body, inner2);
            break;
        }
        case Stmt::Kind::while_s: {
            check_expr(*s.cond, scope, s.line, s.column);
            auto inner = scope;
            check_block(s.body, inner);
            break;
        }
        case Stmt::Kind::for_s: {
            auto inner = scope;
            check_stmt(*s.for_init, inner);
            check_expr(*s.cond, inner, s.line, s.column);
            check_stmt(*s.for_update, inner);
            check_block(s.body, inner);
            break;
        }
        case Stmt::Kind::foreach_s: {
            check_expr(*s.seq, scope, s.line, s.column);
            auto inner = scope;
            declare(s.var, s.line, s.column);
            inner.push_back(s.var);
            check_block(s.body, inner);
            break;
        }
        case Stmt::Kind::call: {
            std::size_t want = s.callee == "print" ? 1 : s.callee == "append" ? 2 : 3;
            if (s.args.size() != want)
                fail(errc::syntax_error, s.callee + " takes " + std::to_string(want) + " argument(s)",
                     s.line, s.column);
            if (s.callee == "append" || s.callee == "swap") {
                if (s.args[0]->kind != Expr::Kind::var)
                    fail(errc::syntax_error, s.callee + " needs a variable as first argument",
                         s.line, s.column);
            }
            for (const auto& a : s.args) check_expr(*a, scope, s.line, s.column);
            break;
        }
        case Stmt::Kind::ret:
            if (s.ret_value) check_expr(*s.ret_value, scope, s.line, s.column);
            break;
        }
    }

    void check_block(const Block& b, std::vector<std::string>& scope) {
        for (const auto& s : b) check_stmt(*s, scope);
    }

    const Program& prog_;
    std::set<std::string> all_names_;
};

} // namespace detail

// Collect the names the body ever writes (assignment targets, append/swap
// arrays, foreach variables).
inline std::set<std::string> written_names(const Program& p) {
    std::set<std::string> w;
    for_each_stmt(p.body, [&](const Stmt& s) {
        switch (s.kind) {
        case Stmt::Kind::assign: w.insert(s.lvalue.var); break;
        case Stmt::Kind::declare:
            if (s.init) w.insert(s.var);
            break;
        case Stmt::Kind::foreach_s: w.insert(s.var); break;
        case Stmt::Kind::call:
            if ((s.callee == "append" || s.callee == "swap") && !s.args.empty() &&
                s.args[0]->kind == Expr::Kind::var)
                w.insert(s.args[0]->name);
            break;
        default: break;
        }
    });
    return w;
}

// Parse and scope-check a source unit; statement ids are assigned in
// pre-order and parameters get their read-only flags.
inline Program parse(const std::string& source) {
    detail::Parser parser(lex(source));
    Program p = parser.parse_program();
    detail::Checker(p).run();
    renumber_statements(p);
    auto written = written_names(p);
    for (auto& prm : p.params) prm.read_only = written.find(prm.name) == written.end();
    return p;
}

} // namespace dpe::minilang
