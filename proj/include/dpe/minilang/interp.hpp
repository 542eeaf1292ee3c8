#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpe/minilang/ast.hpp"
#include "dpe/minilang/parser.hpp"
#include "dpe/minilang/printer.hpp"

namespace dpe::minilang {

// One instrumentation event: emitted immediately after every statement that
// changes a variable binding.
struct WriteEvent {
    int seq = 0;
    std::string var;
    Value value; // never Bottom
    int stmt_id = -1;

    bool operator==(const WriteEvent&) const = default;
};

enum class Verdict { completed, runtime_error, budget_exceeded };

inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::completed: return "Completed";
    case Verdict::runtime_error: return "RuntimeError";
    case Verdict::budget_exceeded: return "BudgetExceeded";
    }
    return "?";
}

struct ExecResult {
    std::string output;
    std::vector<WriteEvent> trace;
    Verdict verdict = Verdict::completed;
    std::string error;       // message for runtime_error
    std::vector<int> executed; // statement ids in execution order
    long steps = 0;
};

inline constexpr long kDefaultStepBudget = 10000;

// Variables the instrumentation tracks, in first-declaration order:
// writable parameters first (parameter order), then locals and foreach
// variables in statement pre-order. Read-only parameters are ignored.
inline std::vector<std::string> tracked_variables(const Program& p) {
    std::vector<std::string> vars;
    for (const auto& prm : p.params)
        if (!prm.read_only) vars.push_back(prm.name);
    for_each_stmt(p.body, [&](const Stmt& s) {
        if (s.kind == Stmt::Kind::declare || s.kind == Stmt::Kind::foreach_s)
            vars.push_back(s.var);
    });
    return vars;
}

namespace detail {

struct BudgetExhausted {};
struct RuntimeFault {
    std::string message;
};
struct ReturnSignal {};

class Interp {
public:
    Interp(const Program& p, long budget, ExecResult& out)
        : prog_(p), budget_(budget), out_(out) {}

    void run(const std::vector<Value>& inputs) {
        if (inputs.size() != prog_.params.size())
            fail(errc::input_mismatch,
                 "expected " + std::to_string(prog_.params.size()) + " input(s), got " +
                     std::to_string(inputs.size()));
        for (std::size_t i = 0; i < prog_.params.size(); ++i) {
            const auto& prm = prog_.params[i];
            const Value& v = inputs[i];
            bool ok = (prm.type == Type::int_t && v.is_int()) ||
                      (prm.type == Type::bool_t && v.is_bool()) ||
                      (prm.type == Type::str_t && v.is_str()) ||
                      (prm.type == Type::int_array_t && v.is_array());
            if (!ok)
                fail(errc::input_mismatch, "input " + std::to_string(i) + " does not match " +
                                               type_name(prm.type) + " " + prm.name);
            env_[prm.name] = v;
        }
        try {
            exec_block(prog_.body);
        } catch (const ReturnSignal&) {
        } catch (const BudgetExhausted&) {
            out_.verdict = Verdict::budget_exceeded;
        } catch (const RuntimeFault& f) {
            out_.verdict = Verdict::runtime_error;
            out_.error = f.message;
        }
        out_.steps = steps_;
    }

private:
    void tick(const Stmt& s, bool record = true) {
        if (record) out_.executed.push_back(s.id);
        if (++steps_ > budget_) throw BudgetExhausted{};
    }

    [[noreturn]] static void rt_fail(const std::string& msg) { throw RuntimeFault{msg}; }

    const Value& read_var(const std::string& name) {
        auto it = env_.find(name);
        if (it == env_.end() || it->second.is_bottom())
            rt_fail("read of unassigned variable '" + name + "'");
        return it->second;
    }

    void emit(const std::string& var, const Stmt& s) {
        out_.trace.push_back(
            {static_cast<int>(out_.trace.size()), var, env_[var], s.id});
    }

    static Int checked_add(Int a, Int b) {
        Int r;
        if (__builtin_add_overflow(a, b, &r)) rt_fail("integer overflow in +");
        return r;
    }
    static Int checked_sub(Int a, Int b) {
        Int r;
        if (__builtin_sub_overflow(a, b, &r)) rt_fail("integer overflow in -");
        return r;
    }
    static Int checked_mul(Int a, Int b) {
        Int r;
        if (__builtin_mul_overflow(a, b, &r)) rt_fail("integer overflow in *");
        return r;
    }

    Value eval_binary(BinOp op, const Expr& lhs_e, const Expr& rhs_e) {
        // Short-circuit forms first.
        if (op == BinOp::and_ || op == BinOp::or_) {
            Value l = eval(lhs_e);
            if (!l.is_bool()) rt_fail("logical operand is not bool");
            if (op == BinOp::and_ && !l.as_bool()) return Value(false);
            if (op == BinOp::or_ && l.as_bool()) return Value(true);
            Value r = eval(rhs_e);
            if (!r.is_bool()) rt_fail("logical operand is not bool");
            return r;
        }
        Value l = eval(lhs_e);
        Value r = eval(rhs_e);
        if (op == BinOp::eq || op == BinOp::ne) {
            if (l.is_int() != r.is_int() || l.is_str() != r.is_str() ||
                l.is_bool() != r.is_bool() || l.is_array() != r.is_array())
                rt_fail(std::string("cannot compare ") + l.type_name() + " with " + r.type_name());
            bool eq = l == r;
            return Value(op == BinOp::eq ? eq : !eq);
        }
        if (op == BinOp::add && l.is_str() && r.is_str()) return Value(l.as_str() + r.as_str());
        if (!l.is_int() || !r.is_int())
            rt_fail(std::string("arithmetic on ") + l.type_name() + " and " + r.type_name());
        Int a = l.as_int(), b = r.as_int();
        switch (op) {
        case BinOp::add: return Value(checked_add(a, b));
        case BinOp::sub: return Value(checked_sub(a, b));
        case BinOp::mul: return Value(checked_mul(a, b));
        case BinOp::div:
            if (b == 0) rt_fail("division by zero");
            if (a == kNegInf && b == -1) rt_fail("integer overflow in /");
            return Value(a / b);
        case BinOp::mod:
            if (b == 0) rt_fail("modulo by zero");
            if (a == kNegInf && b == -1) rt_fail("integer overflow in %");
            return Value(a % b);
        case BinOp::lt: return Value(a < b);
        case BinOp::le: return Value(a <= b);
        case BinOp::gt: return Value(a > b);
        case BinOp::ge: return Value(a >= b);
        default: break;
        }
        rt_fail("bad binary operator");
    }

    Value eval(const Expr& e) {
        switch (e.kind) {
        case Expr::Kind::int_lit: return Value(e.int_val);
        case Expr::Kind::neg_inf: return Value(kNegInf);
        case Expr::Kind::bool_lit: return Value(e.bool_val);
        case Expr::Kind::str_lit: return Value(e.str_val);
        case Expr::Kind::array_lit: {
            IntArray a;
            for (const auto& el : e.args) {
                Value v = eval(*el);
                if (!v.is_int()) rt_fail("array elements must be int");
                a.push_back(v.as_int());
            }
            return Value(std::move(a));
        }
        case Expr::Kind::var: return read_var(e.name);
        case Expr::Kind::index: {
            const Value& base = read_var(e.name);
            Value iv = eval(*e.args[0]);
            if (!iv.is_int()) rt_fail("index must be int");
            Int i = iv.as_int();
            if (base.is_array()) {
                const auto& a = base.as_array();
                if (i < 0 || static_cast<std::size_t>(i) >= a.size())
                    rt_fail("array index " + render_int(i) + " out of bounds (size " +
                            std::to_string(a.size()) + ")");
                return Value(a[static_cast<std::size_t>(i)]);
            }
            if (base.is_str()) {
                const auto& s = base.as_str();
                if (i < 0 || static_cast<std::size_t>(i) >= s.size())
                    rt_fail("string index " + render_int(i) + " out of bounds (length " +
                            std::to_string(s.size()) + ")");
                return Value(std::string(1, s[static_cast<std::size_t>(i)]));
            }
            rt_fail("cannot index a " + std::string(base.type_name()));
        }
        case Expr::Kind::unary: {
            Value v = eval(*e.args[0]);
            if (e.un_op == UnOp::neg) {
                if (!v.is_int()) rt_fail("unary - on non-int");
                if (v.as_int() == kNegInf) rt_fail("integer overflow in unary -");
                return Value(-v.as_int());
            }
            if (!v.is_bool()) rt_fail("! on non-bool");
            return Value(!v.as_bool());
        }
        case Expr::Kind::binary: return eval_binary(e.bin_op, *e.args[0], *e.args[1]);
        case Expr::Kind::call: {
            // Only len is valid in expression position (enforced at parse).
            Value v = eval(*e.args[0]);
            if (v.is_array()) return Value(static_cast<Int>(v.as_array().size()));
            if (v.is_str()) return Value(static_cast<Int>(v.as_str().size()));
            rt_fail("len on non-sequence");
        }
        }
        rt_fail("bad expression");
    }

    Value apply_assign_op(AssignOp op, const Value& old_v, Value rhs) {
        if (op == AssignOp::set) return rhs;
        if (old_v.is_str() && rhs.is_str()) {
            if (op != AssignOp::add) rt_fail("only += is defined on str");
            return Value(old_v.as_str() + rhs.as_str());
        }
        if (!old_v.is_int() || !rhs.is_int())
            rt_fail(std::string("compound assignment on ") + old_v.type_name() + " and " +
                    rhs.type_name());
        Int a = old_v.as_int(), b = rhs.as_int();
        switch (op) {
        case AssignOp::add: return Value(checked_add(a, b));
        case AssignOp::sub: return Value(checked_sub(a, b));
        case AssignOp::mul: return Value(checked_mul(a, b));
        case AssignOp::div:
            if (b == 0) rt_fail("division by zero");
            if (a == kNegInf && b == -1) rt_fail("integer overflow in /=");
            return Value(a / b);
        default: break;
        }
        rt_fail("bad assignment operator");
    }

    void exec_assign(const Stmt& s) {
        Value rhs = eval(*s.value);
        if (!s.lvalue.index) {
            if (s.assign_op == AssignOp::set) {
                env_[s.lvalue.var] = std::move(rhs);
            } else {
                const Value& old_v = read_var(s.lvalue.var);
                env_[s.lvalue.var] = apply_assign_op(s.assign_op, old_v, std::move(rhs));
            }
            emit(s.lvalue.var, s);
            return;
        }
        // Indexed write: the event carries the whole array value.
        Value iv = eval(*s.lvalue.index);
        if (!iv.is_int()) rt_fail("index must be int");
        Int i = iv.as_int();
        Value& base = env_[s.lvalue.var];
        if (base.is_bottom()) rt_fail("read of unassigned variable '" + s.lvalue.var + "'");
        if (!base.is_array()) rt_fail("indexed assignment to non-array");
        auto& arr = base.as_array();
        if (i < 0 || static_cast<std::size_t>(i) >= arr.size())
            rt_fail("array index " + render_int(i) + " out of bounds (size " +
                    std::to_string(arr.size()) + ")");
        if (!rhs.is_int() && s.assign_op == AssignOp::set) rt_fail("array elements must be int");
        Value old_elem(arr[static_cast<std::size_t>(i)]);
        Value new_elem = apply_assign_op(s.assign_op, old_elem, std::move(rhs));
        arr[static_cast<std::size_t>(i)] = new_elem.as_int();
        emit(s.lvalue.var, s);
    }

    void exec_call(const Stmt& s) {
        if (s.callee == "print") {
            Value v = eval(*s.args[0]);
            if (v.is_bottom()) rt_fail("print of unassigned value");
            out_.output += display_value(v);
            out_.output += '\n';
            return;
        }
        if (s.callee == "append") {
            Value item = eval(*s.args[1]);
            if (!item.is_int()) rt_fail("append item must be int");
            Value& base = env_[s.args[0]->name];
            if (base.is_bottom())
                rt_fail("read of unassigned variable '" + s.args[0]->name + "'");
            if (!base.is_array()) rt_fail("append to non-array");
            base.as_array().push_back(item.as_int());
            emit(s.args[0]->name, s);
            return;
        }
        // swap(A, i, j)
        Value iv = eval(*s.args[1]);
        Value jv = eval(*s.args[2]);
        if (!iv.is_int() || !jv.is_int()) rt_fail("swap indices must be int");
        Value& base = env_[s.args[0]->name];
        if (base.is_bottom()) rt_fail("read of unassigned variable '" + s.args[0]->name + "'");
        if (!base.is_array()) rt_fail("swap on non-array");
        auto& arr = base.as_array();
        Int i = iv.as_int(), j = jv.as_int();
        if (i < 0 || static_cast<std::size_t>(i) >= arr.size() || j < 0 ||
            static_cast<std::size_t>(j) >= arr.size())
            rt_fail("swap index out of bounds");
        std::swap(arr[static_cast<std::size_t>(i)], arr[static_cast<std::size_t>(j)]);
        emit(s.args[0]->name, s);
    }

    bool eval_cond(const Expr& e) {
        Value v = eval(e);
        if (!v.is_bool()) rt_fail("condition is not bool");
        return v.as_bool();
    }

    void exec_stmt(const Stmt& s) {
        tick(s);
        switch (s.kind) {
        case Stmt::Kind::declare:
            if (s.init) {
                Value v = eval(*s.init);
                if (v.is_bottom()) rt_fail("initializer is unassigned");
                env_[s.var] = std::move(v);
                emit(s.var, s);
            } else {
                env_[s.var] = Value::bottom();
            }
            break;
        case Stmt::Kind::assign:
            exec_assign(s);
            break;
        case Stmt::Kind::if_s:
            if (eval_cond(*s.cond)) exec_block(s.body);
            else exec_block(s.else_body);
            break;
        case Stmt::Kind::while_s:
            while (true) {
                if (!eval_cond(*s.cond)) break;
                exec_block(s.body);
                tick(s, /*record=*/false); // each guard re-evaluation costs a step
            }
            break;
        case Stmt::Kind::for_s:
            exec_stmt(*s.for_init);
            while (true) {
                if (!eval_cond(*s.cond)) break;
                exec_block(s.body);
                exec_stmt(*s.for_update);
                tick(s, /*record=*/false);
            }
            break;
        case Stmt::Kind::foreach_s: {
            Value seq = eval(*s.seq);
            if (seq.is_array()) {
                IntArray items = seq.as_array(); // snapshot at loop entry
                for (Int item : items) {
                    env_[s.var] = Value(item);
                    emit(s.var, s);
                    exec_block(s.body);
                    tick(s, /*record=*/false);
                }
            } else if (seq.is_str()) {
                std::string chars = seq.as_str();
                for (char c : chars) {
                    env_[s.var] = Value(std::string(1, c));
                    emit(s.var, s);
                    exec_block(s.body);
                    tick(s, /*record=*/false);
                }
            } else {
                rt_fail("foreach over non-sequence");
            }
            break;
        }
        case Stmt::Kind::call:
            exec_call(s);
            break;
        case Stmt::Kind::ret:
            if (s.ret_value) (void)eval(*s.ret_value);
            throw ReturnSignal{};
        }
    }

    void exec_block(const Block& b) {
        for (const auto& s : b) exec_stmt(*s);
    }

    const Program& prog_;
    long budget_;
    long steps_ = 0;
    ExecResult& out_;
    std::map<std::string, Value> env_;
};

} // namespace detail

// Run a program on the given inputs. Pure: identical (program, inputs,
// budget) produce identical results. Runtime faults and budget exhaustion
// are reported through the verdict, not exceptions; only a pre-condition
// violation (input arity/type mismatch) throws.
inline ExecResult execute(const Program& p, const std::vector<Value>& inputs,
                          long step_budget = kDefaultStepBudget) {
    if (step_budget <= 0) fail(errc::input_mismatch, "step budget must be positive");
    ExecResult result;
    detail::Interp interp(p, step_budget, result);
    interp.run(inputs);
    return result;
}

// Project the trace onto one variable's values.
inline std::vector<Value> values_of(const std::vector<WriteEvent>& trace, const std::string& var) {
    std::vector<Value> out;
    for (const auto& ev : trace)
        if (ev.var == var) out.push_back(ev.value);
    return out;
}

} // namespace dpe::minilang
