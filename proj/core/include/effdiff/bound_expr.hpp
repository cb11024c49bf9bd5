#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "effdiff/budget.hpp"
#include "effdiff/ordinal.hpp"

namespace effdiff {

class MonotoneFn;

// Symbolic bound expression. Immutable; serialized as an s-expression.
class BoundExpr {
public:
    enum class Kind {
        Const,    // value
        Var,      // name
        Add,      // args[0] + args[1]
        Sub,      // truncated args[0] - args[1]
        Mul,
        Pow,
        Max,
        Binom,    // binomial(args[0], args[1])
        Call,     // catalogue entry `name` applied to args
        Apply,    // args[0] is a function, args[1] its argument
        Iterate,  // args[0] function iterated `index` times (ordinal) on args[1]
        Repeat,   // args[0] function iterated args[2] times (natural) on args[1]
        Fn,       // lambda: `name` is the bound variable, args[0] the body
    };

    BoundExpr();  // Const 0

    static BoundExpr constant(const BigNat& v);
    static BoundExpr var(const std::string& name);
    static BoundExpr add(BoundExpr a, BoundExpr b);
    static BoundExpr sub(BoundExpr a, BoundExpr b);
    static BoundExpr mul(BoundExpr a, BoundExpr b);
    static BoundExpr pow(BoundExpr a, BoundExpr b);
    static BoundExpr max(BoundExpr a, BoundExpr b);
    static BoundExpr binom(BoundExpr n, BoundExpr k);
    static BoundExpr call(const std::string& name, std::vector<BoundExpr> args);
    static BoundExpr apply(BoundExpr fn, BoundExpr arg);
    static BoundExpr iterate(BoundExpr fn, const Ordinal& index, BoundExpr arg);
    static BoundExpr repeat(BoundExpr fn, BoundExpr count, BoundExpr arg);
    static BoundExpr fn(const std::string& var, BoundExpr body);

    Kind kind() const;
    const BigNat& value() const;
    const std::string& name() const;
    const std::vector<BoundExpr>& args() const;
    const Ordinal& index() const;
    bool is_const() const { return kind() == Kind::Const; }

    std::string sexpr() const;
    static BoundExpr parse_sexpr(const std::string& text);
    // Infix: "i+2", "2*i^2", "max(i,3)", "binom(i+2,2)", "g(i,2)".
    static BoundExpr parse_infix(const std::string& text);

    BoundExpr substitute(const std::string& var, const BoundExpr& by) const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
    explicit BoundExpr(std::shared_ptr<const Node> n);
};

// Function argument for catalogue entries (D, F, g). Monotonicity is a caller
// contract; `inflationary` asserts g(x) >= x + 1, which lets an interrupted
// iteration report its current value as a lower bound.
class MonotoneFn {
public:
    using Impl = std::function<Val(const Val&, Budget&)>;

    MonotoneFn(std::string name, Impl f, bool inflationary = false, BoundExpr expr = {});

    Val operator()(const Val& x, Budget& b) const;
    Val operator()(const BigNat& x, Budget& b) const { return (*this)(Val(x), b); }

    const std::string& name() const { return name_; }
    bool inflationary() const { return inflationary_; }
    bool is_successor() const { return successor_; }
    // Expression form used when the function appears inside a BoundExpr.
    const BoundExpr& expr() const { return expr_; }

    // x -> x + 1
    static MonotoneFn successor();
    // Lambda (fn v body) or a body in variable `var`.
    static MonotoneFn from_expr(const BoundExpr& fn_expr);
    // Infix body in variable i, e.g. "i+2". Marked inflationary when the spot check
    // sees f(x) >= x+1 on every sample.
    static MonotoneFn parse(const std::string& infix);

    // Checks f(x) <= f(y) on 32 deterministic pairs x < y; returns offending pairs.
    std::vector<std::pair<BigNat, BigNat>> spot_check(Budget& b) const;

private:
    std::string name_;
    Impl f_;
    bool inflationary_ = false;
    bool successor_ = false;
    BoundExpr expr_;
};

// Free variables and function parameters for evaluation.
struct EvalEnv {
    std::map<std::string, BigNat> vars;
    std::map<std::string, MonotoneFn> fns;
};

// Resolves a function argument: a lambda, a name bound in env.fns, or G (successor).
MonotoneFn function_arg(const BoundExpr& e, const EvalEnv& env);

Val eval(const BoundExpr& e, const EvalEnv& env, Budget& budget);

// Exact value, or a residue: the unevaluated expression plus a certified lower bound.
struct EvalOutcome {
    bool exact = true;
    BigNat value;  // exact value, or lower bound when !exact
    std::string residue;
    std::string str() const;
};

EvalOutcome evaluate(const BoundExpr& e, const EvalEnv& env, Budget budget);

}  // namespace effdiff
