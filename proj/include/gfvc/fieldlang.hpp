#pragma once

#include <gfvc/errors.hpp>

#include <array>
#include <memory>
#include <string>
#include <vector>

namespace gfvc::fieldlang {

/// Variable set of an expression: exactly three declared names, e.g.
/// {"x","y","z"} or {"r","phi","z"}.
using VarNames = std::array<std::string, 3>;

inline VarNames cartesian_vars() { return {"x", "y", "z"}; }

enum class NodeKind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
enum class Func { Exp, Sin, Cos, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node.  `offset` points into the original source text for
/// error reporting; synthesized nodes carry offset 0.
struct Node {
    NodeKind kind;
    double value = 0.0;        // Const
    int var = -1;              // Var index 0..2
    Func func = Func::Exp;     // Call
    NodePtr a, b;              // operands
    std::size_t offset = 0;
};

/// A parsed field expression over a declared 3-variable set.
class FieldExpr {
public:
    FieldExpr() = default;
    FieldExpr(NodePtr root, VarNames vars) : root_(std::move(root)), vars_(std::move(vars)) {}

    bool empty() const { return root_ == nullptr; }
    const NodePtr& root() const { return root_; }
    const VarNames& vars() const { return vars_; }

    double eval(const std::array<double, 3>& point) const;
    FieldExpr diff(int var) const;
    FieldExpr diff(const std::string& var) const;

    /// Substitute constants for all variables except `keep`, producing a
    /// one-variable expression (still over the same 3-name set).
    FieldExpr freeze_except(int keep, const std::array<double, 3>& point) const;

    /// Structural equality (same shape, same constants).
    bool equals(const FieldExpr& other) const;

    std::string print() const;

    int var_index(const std::string& name) const;

private:
    NodePtr root_;
    VarNames vars_ = cartesian_vars();
};

/// Parse `text` over the declared variables.  Standard precedence
/// (power > unary minus > mul/div > add/sub), right-associative power,
/// whitespace-insensitive.  Power exponents must fold to constants
/// (the grammar has no logarithm, so d/dx u^v is only defined for
/// constant v).  Throws ParseError with byte offset and expected set.
FieldExpr parse(const std::string& text, const VarNames& vars = cartesian_vars());

/// Leading endpoint exponent of `e` in `var` as var -> 0+ (other variables
/// held at generic positive values): the minimum over additive terms of the
/// power of `var`, clamped into (-1, 0].  Throws DomainError if the leading
/// exponent is <= -1 (outside C_-1).  `inferred_ok` (optional) reports
/// whether the syntactic pattern matched or the conservative 0 fallback was
/// used.
double endpoint_exponent(const FieldExpr& e, int var, bool* inferred_ok = nullptr);

struct ScalarField {
    FieldExpr expr;
    double operator()(const std::array<double, 3>& p) const { return expr.eval(p); }
};

struct VectorField {
    std::array<FieldExpr, 3> comp;
    std::array<double, 3> operator()(const std::array<double, 3>& p) const {
        return {comp[0].eval(p), comp[1].eval(p), comp[2].eval(p)};
    }
};

ScalarField scalar_field(const std::string& text, const VarNames& vars = cartesian_vars());
VectorField vector_field(const std::string& fx, const std::string& fy, const std::string& fz,
                         const VarNames& vars = cartesian_vars());

}  // namespace gfvc::fieldlang
