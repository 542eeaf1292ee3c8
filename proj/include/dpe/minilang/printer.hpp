#pragma once

#include <string>

#include "dpe/minilang/ast.hpp"

namespace dpe::minilang {

namespace detail {

inline int binop_prec(BinOp op) {
    switch (op) {
    case BinOp::or_: return 1;
    case BinOp::and_: return 2;
    case BinOp::eq:
    case BinOp::ne: return 3;
    case BinOp::lt:
    case BinOp::le:
    case BinOp::gt:
    case BinOp::ge: return 4;
    case BinOp::add:
    case BinOp::sub: return 5;
    case BinOp::mul:
    case BinOp::div:
    case BinOp::mod: return 6;
    }
    return 0;
}

inline void print_expr(const Expr& e, std::string& out, int parent_prec) {
    switch (e.kind) {
    case Expr::Kind::int_lit: out += render_int(e.int_val); break;
    case Expr::Kind::neg_inf: out += "-inf"; break;
    case Expr::Kind::bool_lit: out += e.bool_val ? "true" : "false"; break;
    case Expr::Kind::str_lit: out += escape_str(e.str_val); break;
    case Expr::Kind::var: out += e.name; break;
    case Expr::Kind::index:
        out += e.name;
        out += '[';
        print_expr(*e.args[0], out, 0);
        out += ']';
        break;
    case Expr::Kind::array_lit:
        out += '[';
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) out += ", ";
            print_expr(*e.args[i], out, 0);
        }
        out += ']';
        break;
    case Expr::Kind::call:
        out += e.name;
        out += '(';
        for (std::size_t i = 0; i < e.args.size(); ++i) {
            if (i) out += ", ";
            print_expr(*e.args[i], out, 0);
        }
        out += ')';
        break;
    case Expr::Kind::unary:
        out += e.un_op == UnOp::neg ? "-" : "!";
        // Unary binds tighter than any binary operator.
        print_expr(*e.args[0], out, 7);
        break;
    case Expr::Kind::binary: {
        int prec = binop_prec(e.bin_op);
        bool parens = prec < parent_prec;
        if (parens) out += '(';
        print_expr(*e.args[0], out, prec);
        out += ' ';
        out += binop_text(e.bin_op);
        out += ' ';
        // Left-associative: the right child needs parens at equal precedence.
        print_expr(*e.args[1], out, prec + 1);
        if (parens) out += ')';
        break;
    }
    }
}

inline std::string expr_text(const Expr& e) {
    std::string out;
    print_expr(e, out, 0);
    return out;
}

inline void print_block(const Block& b, std::string& out, int indent);

// Statement header/line text without indentation or braces. For compound
// statements this is the header only.
inline std::string stmt_header(const Stmt& s) {
    std::string out;
    switch (s.kind) {
    case Stmt::Kind::declare:
        out += type_name(s.decl_type);
        out += ' ';
        out += s.var;
        if (s.init) {
            out += " = ";
            out += expr_text(*s.init);
        }
        out += ';';
        break;
    case Stmt::Kind::assign:
        out += s.lvalue.var;
        if (s.lvalue.index) {
            out += '[';
            out += expr_text(*s.lvalue.index);
            out += ']';
        }
        out += ' ';
        out += assignop_text(s.assign_op);
        out += ' ';
        out += expr_text(*s.value);
        out += ';';
        break;
    case Stmt::Kind::if_s:
        out += "if (";
        out += expr_text(*s.cond);
        out += ')';
        break;
    case Stmt::Kind::while_s:
        out += "while (";
        out += expr_text(*s.cond);
        out += ')';
        break;
    case Stmt::Kind::for_s: {
        out += "for (";
        std::string init = stmt_header(*s.for_init);
        out += init; // includes the ';'
        out += ' ';
        out += expr_text(*s.cond);
        out += "; ";
        std::string upd = stmt_header(*s.for_update);
        upd.pop_back(); // drop the ';'
        out += upd;
        out += ')';
        break;
    }
    case Stmt::Kind::foreach_s:
        out += "for (";
        out += s.var;
        out += " in ";
        out += expr_text(*s.seq);
        out += ')';
        break;
    case Stmt::Kind::call:
        out += s.callee;
        out += '(';
        for (std::size_t i = 0; i < s.args.size(); ++i) {
            if (i) out += ", ";
            out += expr_text(*s.args[i]);
        }
        out += ");";
        break;
    case Stmt::Kind::ret:
        out += "return";
        if (s.ret_value) {
            out += ' ';
            out += expr_text(*s.ret_value);
        }
        out += ';';
        break;
    }
    return out;
}

inline void print_stmt(const Stmt& s, std::string& out, int indent) {
    out.append(static_cast<std::size_t>(indent) * 4, ' ');
    out += stmt_header(s);
    switch (s.kind) {
    case Stmt::Kind::if_s:
        out += " {\n";
        print_block(s.body, out, indent + 1);
        out.append(static_cast<std::size_t>(indent) * 4, ' ');
        out += '}';
        if (!s.else_body.empty()) {
            // An else-body holding exactly one if prints as "else if".
            if (s.else_body.size() == 1 && s.else_body[0]->kind == Stmt::Kind::if_s) {
                out += " else ";
                std::string nested;
                print_stmt(*s.else_body[0], nested, indent);
                // Strip the nested statement's leading indent.
                out += nested.substr(static_cast<std::size_t>(indent) * 4);
                return; // nested print already ended the line
            }
            out += " else {\n";
            print_block(s.else_body, out, indent + 1);
            out.append(static_cast<std::size_t>(indent) * 4, ' ');
            out += '}';
        }
        out += '\n';
        break;
    case Stmt::Kind::while_s:
    case Stmt::Kind::for_s:
    case Stmt::Kind::foreach_s:
        out += " {\n";
        print_block(s.body, out, indent + 1);
        out.append(static_cast<std::size_t>(indent) * 4, ' ');
        out += "}\n";
        break;
    default:
        out += '\n';
        break;
    }
}

inline void print_block(const Block& b, std::string& out, int indent) {
    for (const auto& s : b) print_stmt(*s, out, indent);
}

} // namespace detail

// Canonical statement rendering used for diffs and statement multisets:
// full line for simple statements, header only for compound ones.
inline std::string canonical_stmt(const Stmt& s) { return detail::stmt_header(s); }

inline std::string expr_to_text(const Expr& e) { return detail::expr_text(e); }

// Deterministic canonical rendering; parse(pretty_print(p)) is structurally
// equal to p.
inline std::string pretty_print(const Program& p) {
    std::string out = "fn ";
    out += p.name;
    out += '(';
    for (std::size_t i = 0; i < p.params.size(); ++i) {
        if (i) out += ", ";
        out += type_name(p.params[i].type);
        out += ' ';
        out += p.params[i].name;
    }
    out += ") {\n";
    detail::print_block(p.body, out, 1);
    out += "}\n";
    return out;
}

} // namespace dpe::minilang
