#include <gfvc/fieldlang.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace gfvc::fieldlang {

namespace {

NodePtr make_const(double v, std::size_t off = 0) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Const;
    n->value = v;
    n->offset = off;
    return n;
}

bool is_const(const NodePtr& n, double* v = nullptr) {
    if (n->kind != NodeKind::Const) return false;
    if (v) *v = n->value;
    return true;
}

double apply_func(Func f, double x, std::size_t off) {
    switch (f) {
        case Func::Exp: return std::exp(x);
        case Func::Sin: return std::sin(x);
        case Func::Cos: return std::cos(x);
        case Func::Sqrt:
            if (x < 0.0) throw EvalError("sqrt of negative value", off);
            return std::sqrt(x);
    }
    throw EvalError("unknown function", off);
}

// Smart constructors with constant folding (the only simplification).
NodePtr make_unary(NodeKind k, NodePtr a, std::size_t off);
NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b, std::size_t off);
NodePtr make_call(Func f, NodePtr a, std::size_t off);

NodePtr make_unary(NodeKind k, NodePtr a, std::size_t off) {
    double va;
    if (k == NodeKind::Neg && is_const(a, &va)) return make_const(-va, off);
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->offset = off;
    return n;
}

NodePtr make_binary(NodeKind k, NodePtr a, NodePtr b, std::size_t off) {
    double va, vb;
    // identity folds keep derivative output readable (0+u, u*1, u^1, ...)
    const bool ca = is_const(a, &va), cb = is_const(b, &vb);
    if (k == NodeKind::Add) {
        if (ca && va == 0.0) return b;
        if (cb && vb == 0.0) return a;
    } else if (k == NodeKind::Sub) {
        if (cb && vb == 0.0) return a;
    } else if (k == NodeKind::Mul) {
        if ((ca && va == 0.0) || (cb && vb == 0.0)) return make_const(0.0, off);
        if (ca && va == 1.0) return b;
        if (cb && vb == 1.0) return a;
    } else if (k == NodeKind::Div) {
        if (cb && vb == 1.0) return a;
    }
    if (ca && cb) {
        switch (k) {
            case NodeKind::Add: return make_const(va + vb, off);
            case NodeKind::Sub: return make_const(va - vb, off);
            case NodeKind::Mul: return make_const(va * vb, off);
            case NodeKind::Div:
                if (vb == 0.0) throw EvalError("constant division by zero", off);
                return make_const(va / vb, off);
            case NodeKind::Pow: {
                if (va < 0.0 && vb != std::floor(vb))
                    throw EvalError("constant fractional power of negative base", off);
                return make_const(std::pow(va, vb), off);
            }
            default: break;
        }
    }
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->offset = off;
    return n;
}

NodePtr make_call(Func f, NodePtr a, std::size_t off) {
    double va;
    if (is_const(a, &va)) return make_const(apply_func(f, va, off), off);
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Call;
    n->func = f;
    n->a = std::move(a);
    n->offset = off;
    return n;
}

// ---------------------------------------------------------------- parser

struct Parser {
    const std::string& src;
    const VarNames& vars;
    std::size_t pos = 0;

    Parser(const std::string& s, const VarNames& v) : src(s), vars(v) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& expected) {
        throw ParseError("syntax error at offset " + std::to_string(pos) + ": expected " + expected,
                         pos, expected);
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            const std::size_t off = pos;
            if (eat('+'))
                lhs = make_binary(NodeKind::Add, lhs, term(), off);
            else if (eat('-'))
                lhs = make_binary(NodeKind::Sub, lhs, term(), off);
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            const std::size_t off = pos;
            if (eat('*'))
                lhs = make_binary(NodeKind::Mul, lhs, unary(), off);
            else if (eat('/'))
                lhs = make_binary(NodeKind::Div, lhs, unary(), off);
            else
                return lhs;
        }
    }

    NodePtr unary() {
        const std::size_t off = pos;
        if (eat('-')) return make_unary(NodeKind::Neg, unary(), off);
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        const std::size_t off = pos;
        if (eat('^')) {
            NodePtr e = unary();  // right associative; allows -0.5 and constant folds
            if (e->kind != NodeKind::Const)
                throw ParseError(
                    "syntax error at offset " + std::to_string(off) +
                        ": power exponent must be a constant expression",
                    off, "constant exponent");
            return make_binary(NodeKind::Pow, base, e, off);
        }
        return base;
    }

    NodePtr atom() {
        skip_ws();
        if (pos >= src.size()) fail("number, variable, function or '('");
        const std::size_t off = pos;
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = expr();
            if (!eat(')')) fail("')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos;
            while (end < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
                ++end;
            const std::string name = src.substr(pos, end - pos);
            pos = end;
            if (name == "exp" || name == "sin" || name == "cos" || name == "sqrt") {
                if (!eat('(')) fail("'(' after function name");
                NodePtr arg = expr();
                if (!eat(')')) fail("')'");
                const Func f = name == "exp"   ? Func::Exp
                               : name == "sin" ? Func::Sin
                               : name == "cos" ? Func::Cos
                                               : Func::Sqrt;
                return make_call(f, arg, off);
            }
            if (name == "pi") return make_const(3.14159265358979323846, off);
            for (int i = 0; i < 3; ++i) {
                if (vars[i] == name) {
                    auto n = std::make_shared<Node>();
                    n->kind = NodeKind::Var;
                    n->var = i;
                    n->offset = off;
                    return n;
                }
            }
            pos = off;
            fail("one of the declared variables {" + vars[0] + "," + vars[1] + "," + vars[2] +
                 "}, a function, or 'pi'");
        }
        fail("number, variable, function or '('");
    }

    NodePtr number() {
        const std::size_t off = pos;
        char* end = nullptr;
        const double v = std::strtod(src.c_str() + pos, &end);
        if (end == src.c_str() + pos) fail("number");
        pos = static_cast<std::size_t>(end - src.c_str());
        return make_const(v, off);
    }
};

// ---------------------------------------------------------------- helpers

double eval_node(const Node* n, const std::array<double, 3>& p) {
    switch (n->kind) {
        case NodeKind::Const: return n->value;
        case NodeKind::Var: return p[static_cast<std::size_t>(n->var)];
        case NodeKind::Neg: return -eval_node(n->a.get(), p);
        case NodeKind::Add: return eval_node(n->a.get(), p) + eval_node(n->b.get(), p);
        case NodeKind::Sub: return eval_node(n->a.get(), p) - eval_node(n->b.get(), p);
        case NodeKind::Mul: return eval_node(n->a.get(), p) * eval_node(n->b.get(), p);
        case NodeKind::Div: {
            const double d = eval_node(n->b.get(), p);
            if (d == 0.0) throw EvalError("division by zero", n->offset);
            return eval_node(n->a.get(), p) / d;
        }
        case NodeKind::Pow: {
            const double base = eval_node(n->a.get(), p);
            const double e = n->b->value;
            if (base < 0.0 && e != std::floor(e))
                throw EvalError("fractional power of negative base", n->offset);
            if (base == 0.0 && e < 0.0) throw EvalError("zero raised to negative power", n->offset);
            return std::pow(base, e);
        }
        case NodeKind::Call: return apply_func(n->func, eval_node(n->a.get(), p), n->offset);
    }
    throw EvalError("corrupt expression node", 0);
}

NodePtr diff_node(const NodePtr& n, int var) {
    switch (n->kind) {
        case NodeKind::Const: return make_const(0.0);
        case NodeKind::Var: return make_const(n->var == var ? 1.0 : 0.0);
        case NodeKind::Neg: return make_unary(NodeKind::Neg, diff_node(n->a, var), 0);
        case NodeKind::Add: return make_binary(NodeKind::Add, diff_node(n->a, var), diff_node(n->b, var), 0);
        case NodeKind::Sub: return make_binary(NodeKind::Sub, diff_node(n->a, var), diff_node(n->b, var), 0);
        case NodeKind::Mul:
            return make_binary(NodeKind::Add,
                               make_binary(NodeKind::Mul, diff_node(n->a, var), n->b, 0),
                               make_binary(NodeKind::Mul, n->a, diff_node(n->b, var), 0), 0);
        case NodeKind::Div:
            return make_binary(
                NodeKind::Div,
                make_binary(NodeKind::Sub, make_binary(NodeKind::Mul, diff_node(n->a, var), n->b, 0),
                            make_binary(NodeKind::Mul, n->a, diff_node(n->b, var), 0), 0),
                make_binary(NodeKind::Mul, n->b, n->b, 0), 0);
        case NodeKind::Pow: {
            // constant exponent by construction: d(u^c) = c u^(c-1) u'
            const double c = n->b->value;
            if (c == 0.0) return make_const(0.0);
            return make_binary(
                NodeKind::Mul,
                make_binary(NodeKind::Mul, make_const(c),
                            make_binary(NodeKind::Pow, n->a, make_const(c - 1.0), 0), 0),
                diff_node(n->a, var), 0);
        }
        case NodeKind::Call: {
            const NodePtr du = diff_node(n->a, var);
            switch (n->func) {
                case Func::Exp:
                    return make_binary(NodeKind::Mul, make_call(Func::Exp, n->a, 0), du, 0);
                case Func::Sin:
                    return make_binary(NodeKind::Mul, make_call(Func::Cos, n->a, 0), du, 0);
                case Func::Cos:
                    return make_binary(
                        NodeKind::Mul,
                        make_unary(NodeKind::Neg, make_call(Func::Sin, n->a, 0), 0), du, 0);
                case Func::Sqrt:
                    return make_binary(NodeKind::Div, du,
                                       make_binary(NodeKind::Mul, make_const(2.0),
                                                   make_call(Func::Sqrt, n->a, 0), 0),
                                       0);
            }
        }
    }
    throw DomainError("diff: corrupt expression node");
}

NodePtr freeze_node(const NodePtr& n, int keep, const std::array<double, 3>& p) {
    switch (n->kind) {
        case NodeKind::Const: return n;
        case NodeKind::Var:
            return n->var == keep ? n : make_const(p[static_cast<std::size_t>(n->var)]);
        case NodeKind::Neg: return make_unary(NodeKind::Neg, freeze_node(n->a, keep, p), n->offset);
        case NodeKind::Call: return make_call(n->func, freeze_node(n->a, keep, p), n->offset);
        default:
            return make_binary(n->kind, freeze_node(n->a, keep, p), freeze_node(n->b, keep, p),
                               n->offset);
    }
}

bool equal_nodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Const: return a->value == b->value;
        case NodeKind::Var: return a->var == b->var;
        case NodeKind::Neg: return equal_nodes(a->a.get(), b->a.get());
        case NodeKind::Call:
            return a->func == b->func && equal_nodes(a->a.get(), b->a.get());
        default:
            return equal_nodes(a->a.get(), b->a.get()) && equal_nodes(a->b.get(), b->b.get());
    }
}

int precedence(const Node* n) {
    switch (n->kind) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        case NodeKind::Const: return n->value < 0.0 ? 3 : 5;  // negative literal reads as unary minus
        default: return 5;
    }
}

void print_node(const Node* n, const VarNames& vars, int parent_prec, std::string& out) {
    const int prec = precedence(n);
    const bool parens = prec < parent_prec;
    if (parens) out += '(';
    switch (n->kind) {
        case NodeKind::Const: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n->value);
            out += buf;
            break;
        }
        case NodeKind::Var: out += vars[static_cast<std::size_t>(n->var)]; break;
        case NodeKind::Neg:
            out += '-';
            print_node(n->a.get(), vars, 3, out);
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
            print_node(n->a.get(), vars, 1, out);
            out += (n->kind == NodeKind::Add ? " + " : " - ");
            print_node(n->b.get(), vars, 2, out);  // right side binds tighter (left assoc)
            break;
        case NodeKind::Mul:
        case NodeKind::Div:
            print_node(n->a.get(), vars, 2, out);
            out += (n->kind == NodeKind::Mul ? "*" : "/");
            print_node(n->b.get(), vars, 3, out);
            break;
        case NodeKind::Pow:
            print_node(n->a.get(), vars, 5, out);  // base must be atomic
            out += '^';
            print_node(n->b.get(), vars, 4, out);
            break;
        case NodeKind::Call: {
            switch (n->func) {
                case Func::Exp: out += "exp("; break;
                case Func::Sin: out += "sin("; break;
                case Func::Cos: out += "cos("; break;
                case Func::Sqrt: out += "sqrt("; break;
            }
            print_node(n->a.get(), vars, 0, out);
            out += ')';
            break;
        }
    }
    if (parens) out += ')';
}

constexpr double kZeroExponent = std::numeric_limits<double>::infinity();

// Leading power of `var` as var -> 0+.  Returns +inf for the identically
// zero expression.  Sets *ok = false where the syntactic pattern gives up
// (the caller then falls back to exponent 0).
double leading_exponent(const Node* n, int var, bool* ok) {
    switch (n->kind) {
        case NodeKind::Const: return n->value == 0.0 ? kZeroExponent : 0.0;
        case NodeKind::Var: return n->var == var ? 1.0 : 0.0;
        case NodeKind::Neg: return leading_exponent(n->a.get(), var, ok);
        case NodeKind::Add:
        case NodeKind::Sub: {
            const double la = leading_exponent(n->a.get(), var, ok);
            const double lb = leading_exponent(n->b.get(), var, ok);
            return std::min(la, lb);
        }
        case NodeKind::Mul: {
            const double la = leading_exponent(n->a.get(), var, ok);
            const double lb = leading_exponent(n->b.get(), var, ok);
            if (la == kZeroExponent || lb == kZeroExponent) return kZeroExponent;
            return la + lb;
        }
        case NodeKind::Div: {
            const double la = leading_exponent(n->a.get(), var, ok);
            const double lb = leading_exponent(n->b.get(), var, ok);
            if (lb == kZeroExponent) { *ok = false; return 0.0; }
            if (la == kZeroExponent) return kZeroExponent;
            return la - lb;
        }
        case NodeKind::Pow: {
            const double lu = leading_exponent(n->a.get(), var, ok);
            if (lu == kZeroExponent) return kZeroExponent;
            if (lu < 0.0 && n->b->value < 0.0) { /* still a power law */ }
            return n->b->value * lu;
        }
        case NodeKind::Call: {
            const double lu = leading_exponent(n->a.get(), var, ok);
            switch (n->func) {
                case Func::Sin:
                    if (lu == kZeroExponent) return kZeroExponent;
                    if (lu > 0.0) return lu;   // sin(u) ~ u
                    if (lu == 0.0) return 0.0;
                    *ok = false;
                    return 0.0;
                case Func::Sqrt:
                    if (lu == kZeroExponent) return kZeroExponent;
                    if (lu >= 0.0) return 0.5 * lu;
                    *ok = false;
                    return 0.0;
                case Func::Exp:
                case Func::Cos:
                    if (lu == kZeroExponent || lu >= 0.0) return 0.0;
                    *ok = false;  // essential singularity pattern
                    return 0.0;
            }
        }
    }
    *ok = false;
    return 0.0;
}

}  // namespace

double FieldExpr::eval(const std::array<double, 3>& point) const {
    if (!root_) throw EvalError("empty expression", 0);
    return eval_node(root_.get(), point);
}

FieldExpr FieldExpr::diff(int var) const {
    if (var < 0 || var > 2) throw DomainError("diff: variable index out of range");
    return FieldExpr(diff_node(root_, var), vars_);
}

FieldExpr FieldExpr::diff(const std::string& var) const { return diff(var_index(var)); }

FieldExpr FieldExpr::freeze_except(int keep, const std::array<double, 3>& point) const {
    if (keep < 0 || keep > 2) throw DomainError("freeze_except: variable index out of range");
    return FieldExpr(freeze_node(root_, keep, point), vars_);
}

bool FieldExpr::equals(const FieldExpr& other) const {
    if (!root_ || !other.root_) return root_ == other.root_;
    return equal_nodes(root_.get(), other.root_.get());
}

std::string FieldExpr::print() const {
    if (!root_) return "";
    std::string out;
    print_node(root_.get(), vars_, 0, out);
    return out;
}

int FieldExpr::var_index(const std::string& name) const {
    for (int i = 0; i < 3; ++i)
        if (vars_[i] == name) return i;
    throw DomainError("unknown variable '" + name + "'");
}

FieldExpr parse(const std::string& text, const VarNames& vars) {
    if (text.empty()) throw ParseError("empty expression", 0, "expression");
    Parser p(text, vars);
    NodePtr root = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("end of input or an operator");
    return FieldExpr(std::move(root), vars);
}

double endpoint_exponent(const FieldExpr& e, int var, bool* inferred_ok) {
    if (e.empty()) throw DomainError("endpoint_exponent: empty expression");
    bool ok = true;
    const double raw = leading_exponent(e.root().get(), var, &ok);
    if (inferred_ok) *inferred_ok = ok;
    if (!ok) return 0.0;  // conservative fallback
    if (raw == kZeroExponent) return 0.0;
    if (raw <= -1.0)
        throw DomainError("endpoint exponent " + std::to_string(raw) +
                          " is outside (-1, 0]: not in C_-1");
    return std::min(raw, 0.0);
}

ScalarField scalar_field(const std::string& text, const VarNames& vars) {
    return {parse(text, vars)};
}

VectorField vector_field(const std::string& fx, const std::string& fy, const std::string& fz,
                         const VarNames& vars) {
    return {{parse(fx, vars), parse(fy, vars), parse(fz, vars)}};
}

}  // namespace gfvc::fieldlang
