#include "effdiff/bound_expr.hpp"

#include <cctype>
#include <random>
#include <sstream>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"

namespace effdiff {

struct BoundExpr::Node {
    Kind kind = Kind::Const;
    BigNat value;
    std::string name;
    std::vector<BoundExpr> args;
    Ordinal index;
};

BoundExpr::BoundExpr() {
    static const auto zero = std::make_shared<const Node>();
    node_ = zero;
}
BoundExpr::BoundExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

BoundExpr BoundExpr::constant(const BigNat& v) {
    if (v < 0) throw DomainError("negative constant");
    auto n = std::make_shared<Node>();
    n->value = v;
    return BoundExpr(n);
}

BoundExpr BoundExpr::var(const std::string& name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = name;
    return BoundExpr(n);
}

#define EFFDIFF_BINARY(fn, K)                                 \
    BoundExpr BoundExpr::fn(BoundExpr a, BoundExpr b) {       \
        auto n = std::make_shared<Node>();                    \
        n->kind = Kind::K;                                    \
        n->args = {std::move(a), std::move(b)};               \
        return BoundExpr(n);                                  \
    }
EFFDIFF_BINARY(add, Add)
EFFDIFF_BINARY(sub, Sub)
EFFDIFF_BINARY(mul, Mul)
EFFDIFF_BINARY(pow, Pow)
EFFDIFF_BINARY(max, Max)
EFFDIFF_BINARY(binom, Binom)
EFFDIFF_BINARY(apply, Apply)
#undef EFFDIFF_BINARY

BoundExpr BoundExpr::call(const std::string& name, std::vector<BoundExpr> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->name = name;
    n->args = std::move(args);
    return BoundExpr(n);
}

BoundExpr BoundExpr::iterate(BoundExpr fn, const Ordinal& index, BoundExpr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Iterate;
    n->args = {std::move(fn), std::move(arg)};
    n->index = index;
    return BoundExpr(n);
}

BoundExpr BoundExpr::repeat(BoundExpr fn, BoundExpr count, BoundExpr arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Repeat;
    n->args = {std::move(fn), std::move(arg), std::move(count)};
    return BoundExpr(n);
}

BoundExpr BoundExpr::fn(const std::string& var, BoundExpr body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Fn;
    n->name = var;
    n->args = {std::move(body)};
    return BoundExpr(n);
}

BoundExpr::Kind BoundExpr::kind() const { return node_->kind; }
const BigNat& BoundExpr::value() const { return node_->value; }
const std::string& BoundExpr::name() const { return node_->name; }
const std::vector<BoundExpr>& BoundExpr::args() const { return node_->args; }
const Ordinal& BoundExpr::index() const { return node_->index; }

namespace {

const char* op_symbol(BoundExpr::Kind k) {
    switch (k) {
        case BoundExpr::Kind::Add: return "+";
        case BoundExpr::Kind::Sub: return "-";
        case BoundExpr::Kind::Mul: return "*";
        case BoundExpr::Kind::Pow: return "^";
        case BoundExpr::Kind::Max: return "max";
        case BoundExpr::Kind::Binom: return "binom";
        case BoundExpr::Kind::Apply: return "apply";
        default: return "";
    }
}

void print(const BoundExpr& e, std::ostringstream& os) {
    using K = BoundExpr::Kind;
    switch (e.kind()) {
        case K::Const: os << e.value().get_str(); return;
        case K::Var: os << e.name(); return;
        case K::Call:
            os << '(' << e.name();
            for (const auto& a : e.args()) {
                os << ' ';
                print(a, os);
            }
            os << ')';
            return;
        case K::Iterate:
            os << "(iterate ";
            print(e.args()[0], os);
            os << " [" << e.index().str() << "] ";
            print(e.args()[1], os);
            os << ')';
            return;
        case K::Repeat:
            os << "(repeat ";
            print(e.args()[0], os);
            os << ' ';
            print(e.args()[2], os);
            os << ' ';
            print(e.args()[1], os);
            os << ')';
            return;
        case K::Fn:
            os << "(fn " << e.name() << ' ';
            print(e.args()[0], os);
            os << ')';
            return;
        default:
            os << '(' << op_symbol(e.kind()) << ' ';
            print(e.args()[0], os);
            os << ' ';
            print(e.args()[1], os);
            os << ')';
    }
}

// ---- s-expression reader

struct SexprReader {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw DomainError("s-expression: " + msg + " at offset " + std::to_string(pos));
    }
    std::string atom() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
               s[pos] != ')' && s[pos] != '[' && s[pos] != ']')
            ++pos;
        if (start == pos) fail("expected atom");
        return s.substr(start, pos - start);
    }
    void expect(char c) {
        skip();
        if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }

    BoundExpr expr() {
        skip();
        if (!peek('(')) {
            std::string a = atom();
            if (std::isdigit(static_cast<unsigned char>(a[0]))) {
                for (char c : a)
                    if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad number " + a);
                return BoundExpr::constant(BigNat(a));
            }
            return BoundExpr::var(a);
        }
        expect('(');
        std::string head = atom();
        BoundExpr out;
        if (head == "fn") {
            std::string v = atom();
            out = BoundExpr::fn(v, expr());
        } else if (head == "iterate") {
            BoundExpr f = expr();
            expect('[');
            std::size_t close = s.find(']', pos);
            if (close == std::string::npos) fail("unterminated ordinal");
            Ordinal idx = Ordinal::parse(s.substr(pos, close - pos));
            pos = close + 1;
            out = BoundExpr::iterate(f, idx, expr());
        } else if (head == "repeat") {
            BoundExpr f = expr();
            BoundExpr count = expr();
            out = BoundExpr::repeat(f, count, expr());
        } else {
            std::vector<BoundExpr> args;
            while (!peek(')')) {
                if (pos >= s.size()) fail("unterminated list");
                args.push_back(expr());
            }
            auto binary = [&](auto build) {
                if (args.size() != 2) fail("'" + head + "' takes two arguments");
                return build(args[0], args[1]);
            };
            if (head == "+") out = binary(BoundExpr::add);
            else if (head == "-") out = binary(BoundExpr::sub);
            else if (head == "*") out = binary(BoundExpr::mul);
            else if (head == "^") out = binary(BoundExpr::pow);
            else if (head == "max") out = binary(BoundExpr::max);
            else if (head == "binom") out = binary(BoundExpr::binom);
            else if (head == "apply") out = binary(BoundExpr::apply);
            else out = BoundExpr::call(head, std::move(args));
        }
        expect(')');
        return out;
    }
};

// ---- infix reader: + - * ^ (right assoc), calls name(a, b, ...)

struct InfixReader {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw DomainError("expression '" + s + "': " + msg + " at offset " + std::to_string(pos));
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    BoundExpr sum() {
        BoundExpr e = product();
        for (;;) {
            if (eat('+')) e = BoundExpr::add(e, product());
            else if (eat('-')) e = BoundExpr::sub(e, product());
            else return e;
        }
    }
    BoundExpr product() {
        BoundExpr e = power();
        while (eat('*')) e = BoundExpr::mul(e, power());
        return e;
    }
    BoundExpr power() {
        BoundExpr b = atom();
        if (eat('^')) return BoundExpr::pow(b, power());
        return b;
    }
    BoundExpr atom() {
        skip();
        if (eat('(')) {
            BoundExpr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (pos >= s.size()) fail("unexpected end");
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return BoundExpr::constant(BigNat(s.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_') {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string name = s.substr(start, pos - start);
            if (!eat('(')) return BoundExpr::var(name);
            std::vector<BoundExpr> args;
            if (!eat(')')) {
                do args.push_back(sum());
                while (eat(','));
                if (!eat(')')) fail("expected ')'");
            }
            if (name == "max") {
                if (args.empty()) fail("max needs arguments");
                BoundExpr e = args[0];
                for (std::size_t i = 1; i < args.size(); ++i) e = BoundExpr::max(e, args[i]);
                return e;
            }
            if (name == "binom") {
                if (args.size() != 2) fail("binom takes two arguments");
                return BoundExpr::binom(args[0], args[1]);
            }
            return BoundExpr::call(name, std::move(args));
        }
        fail(std::string("unexpected '") + s[pos] + "'");
    }
};

}  // namespace

std::string BoundExpr::sexpr() const {
    std::ostringstream os;
    print(*this, os);
    return os.str();
}

BoundExpr BoundExpr::parse_sexpr(const std::string& text) {
    SexprReader r{text};
    BoundExpr e = r.expr();
    r.skip();
    if (r.pos != text.size()) r.fail("trailing input");
    return e;
}

BoundExpr BoundExpr::parse_infix(const std::string& text) {
    InfixReader r{text};
    BoundExpr e = r.sum();
    r.skip();
    if (r.pos != text.size()) r.fail("trailing input");
    return e;
}

BoundExpr BoundExpr::substitute(const std::string& v, const BoundExpr& by) const {
    if (kind() == Kind::Var) return name() == v ? by : *this;
    if (kind() == Kind::Const) return *this;
    if (kind() == Kind::Fn && name() == v) return *this;
    auto n = std::make_shared<Node>(*node_);
    for (auto& a : n->args) a = a.substitute(v, by);
    return BoundExpr(n);
}

// ---- MonotoneFn

MonotoneFn::MonotoneFn(std::string name, Impl f, bool inflationary, BoundExpr expr)
    : name_(std::move(name)), f_(std::move(f)), inflationary_(inflationary), expr_(std::move(expr)) {
    if (expr_.is_const() && expr_.value() == 0) expr_ = BoundExpr::var(name_);
}

Val MonotoneFn::operator()(const Val& x, Budget& b) const {
    Val r = f_(x, b);
    if (!x.exact && r.exact) r.exact = false;
    return r;
}

MonotoneFn MonotoneFn::successor() {
    MonotoneFn g("G", [](const Val& x, Budget& b) { return arith::add(x, Val(1), b); }, true);
    g.successor_ = true;
    return g;
}

namespace {

MonotoneFn lambda_fn(const BoundExpr& fn_expr, const EvalEnv& env) {
    std::string var = fn_expr.name();
    BoundExpr body = fn_expr.args()[0];
    auto captured = std::make_shared<EvalEnv>(env);
    return MonotoneFn(
        fn_expr.sexpr(),
        [var, body, captured](const Val& x, Budget& b) {
            EvalEnv local = *captured;
            local.vars[var] = x.v;
            Val r = eval(body, local, b);
            if (!x.exact) r.exact = false;
            return r;
        },
        false, fn_expr);
}

MonotoneFn checked(MonotoneFn f) {
    Budget b;
    b.max_bits = 4096;
    b.max_steps = 1U << 16;
    auto bad = f.spot_check(b);
    if (!bad.empty())
        throw ContractViolation("function " + f.name() + " is not monotone: f(" + bad[0].first.get_str() +
                                ") > f(" + bad[0].second.get_str() + ")");
    // Inflationary when every sampled point moves up.
    bool infl = true;
    for (unsigned long x = 0; x < 32 && infl; ++x) {
        Budget bb = b;
        Val y = f(Val(x), bb);
        if (y.exact && y.v < x + 1) infl = false;
    }
    return MonotoneFn(f.name(), [f](const Val& x, Budget& bud) { return f(x, bud); }, infl, f.expr());
}

}  // namespace

MonotoneFn MonotoneFn::from_expr(const BoundExpr& fn_expr) {
    if (fn_expr.kind() != BoundExpr::Kind::Fn) return checked(lambda_fn(BoundExpr::fn("i", fn_expr), {}));
    return checked(lambda_fn(fn_expr, {}));
}

MonotoneFn MonotoneFn::parse(const std::string& infix) {
    return from_expr(BoundExpr::fn("i", BoundExpr::parse_infix(infix)));
}

std::vector<std::pair<BigNat, BigNat>> MonotoneFn::spot_check(Budget& b) const {
    std::mt19937_64 rng(0x5eed);
    std::vector<std::pair<BigNat, BigNat>> bad;
    for (int k = 0; k < 32; ++k) {
        unsigned long x = rng() % 48;
        unsigned long y = x + 1 + rng() % 16;
        Budget bx = b, by = b;
        Val fx = (*this)(Val(x), bx);
        Val fy = (*this)(Val(y), by);
        if (fx.exact && fy.exact && fx.v > fy.v) bad.emplace_back(x, y);
    }
    return bad;
}

// ---- evaluation

MonotoneFn function_arg(const BoundExpr& e, const EvalEnv& env) {
    if (e.kind() == BoundExpr::Kind::Fn) return lambda_fn(e, env);
    if (e.kind() == BoundExpr::Kind::Var) {
        auto it = env.fns.find(e.name());
        if (it != env.fns.end()) return it->second;
        if (e.name() == "G") return MonotoneFn::successor();
    }
    throw DomainError("not a function: " + e.sexpr());
}

Val eval(const BoundExpr& e, const EvalEnv& env, Budget& budget) {
    using K = BoundExpr::Kind;
    const auto& a = e.args();
    switch (e.kind()) {
        case K::Const: return Val(e.value());
        case K::Var: {
            auto it = env.vars.find(e.name());
            if (it == env.vars.end()) throw DomainError("unbound variable " + e.name());
            return Val(it->second);
        }
        case K::Add: return arith::add(eval(a[0], env, budget), eval(a[1], env, budget), budget);
        case K::Sub: {
            Val x = eval(a[0], env, budget), y = eval(a[1], env, budget);
            if (!y.exact) return Val(0, false);
            return Val(x.v > y.v ? BigNat(x.v - y.v) : BigNat(0), x.exact);
        }
        case K::Mul: return arith::mul(eval(a[0], env, budget), eval(a[1], env, budget), budget);
        case K::Pow: return arith::pow(eval(a[0], env, budget), eval(a[1], env, budget), budget);
        case K::Max: return arith::max(eval(a[0], env, budget), eval(a[1], env, budget));
        case K::Binom: return arith::choose(eval(a[0], env, budget), eval(a[1], env, budget), budget);
        case K::Apply: return function_arg(a[0], env)(eval(a[1], env, budget), budget);
        case K::Iterate: return iterate(function_arg(a[0], env), e.index(), eval(a[1], env, budget), budget);
        case K::Repeat: {
            MonotoneFn f = function_arg(a[0], env);
            Val count = eval(a[2], env, budget);
            Val r = iterate(f, Ordinal(count.v), eval(a[1], env, budget), budget);
            if (!count.exact) return f.inflationary() ? Val(r.v, false) : Val(0, false);
            return r;
        }
        case K::Fn: throw DomainError("function used as a number: " + e.sexpr());
        case K::Call: return catalogue_call(e.name(), a, env, budget);
    }
    throw DomainError("bad expression node");
}

std::string EvalOutcome::str() const {
    if (exact) return value.get_str();
    return "RESIDUE " + residue + " >= " + value.get_str();
}

EvalOutcome evaluate(const BoundExpr& e, const EvalEnv& env, Budget budget) {
    Val v = eval(e, env, budget);
    EvalOutcome out;
    out.exact = v.exact;
    out.value = v.v;
    if (!v.exact) out.residue = e.sexpr();
    return out;
}

}  // namespace effdiff
