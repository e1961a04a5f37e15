#pragma once

// Syntax tree for J-lite, the Java subset accepted by the frontend.
//
// Nodes own their children through std::unique_ptr / std::vector and are
// move-only. Every node that names something carries the Location of the
// identifier token doing the naming, since footprints are anchored there.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ucov {

struct Location {
  std::string file;
  int line = 1;
  int column = 1;

  friend auto operator<=>(const Location&, const Location&) = default;
  friend bool operator==(const Location&, const Location&) = default;
};

std::string to_string(const Location& loc);

enum class Modifier : std::uint16_t {
  Public = 1u << 0,
  Protected = 1u << 1,
  Private = 1u << 2,
  PackagePrivate = 1u << 3,
  Abstract = 1u << 4,
  Final = 1u << 5,
  Sealed = 1u << 6,
  Static = 1u << 7,
  Default = 1u << 8,
};

class ModifierSet {
 public:
  constexpr ModifierSet() = default;
  constexpr ModifierSet(std::initializer_list<Modifier> mods) {
    for (Modifier m : mods) add(m);
  }

  [[nodiscard]] constexpr bool has(Modifier m) const {
    return (bits_ & static_cast<std::uint16_t>(m)) != 0;
  }
  constexpr void add(Modifier m) { bits_ |= static_cast<std::uint16_t>(m); }
  constexpr void remove(Modifier m) {
    bits_ &= static_cast<std::uint16_t>(~static_cast<std::uint16_t>(m));
  }
  [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
  [[nodiscard]] int visibility_count() const;

  /// Lower-case modifier names in a fixed order (visibility first).
  [[nodiscard]] std::vector<std::string> names() const;

  friend constexpr bool operator==(ModifierSet, ModifierSet) = default;

 private:
  std::uint16_t bits_ = 0;
};

std::string_view modifier_name(Modifier m);
std::optional<Modifier> modifier_from_name(std::string_view name);

// ---------------------------------------------------------------------------
// Types

struct TypeRef {
  enum class Wildcard { None, Unbounded, Extends, Super };

  std::vector<std::string> name;  // qualified-name segments; empty for `?`
  Location loc;                   // last name segment, or the `?` token
  std::vector<TypeRef> args;
  bool diamond = false;
  Wildcard wildcard = Wildcard::None;
  std::vector<TypeRef> bound;  // at most one, for `? extends T` / `? super T`
  int dims = 0;

  [[nodiscard]] std::string qualified() const;
  [[nodiscard]] bool is_primitive() const;
};

bool is_primitive_name(std::string_view name);

struct TypeParam {
  std::string name;
  Location loc;
  std::vector<TypeRef> bounds;
};

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
struct Stmt;
struct TypeDecl;
struct Block;
using ExprPtr = std::unique_ptr<Expr>;

enum class LiteralKind { Int, Long, Float, Double, Char, String, Boolean, Null };

struct LiteralExpr {
  LiteralKind kind = LiteralKind::Int;
  std::string text;  // source spelling, quotes included for strings/chars
};

struct NameExpr {
  std::string name;
};

struct ThisExpr {};
struct SuperExpr {};

struct FieldAccessExpr {
  ExprPtr target;
  std::string name;
};

struct CallExpr {
  ExprPtr target;  // null for unqualified calls
  std::string name;
  std::vector<ExprPtr> args;
};

/// `this(...)` or `super(...)` as the first statement of a constructor.
struct CtorCallExpr {
  bool is_super = false;
  std::vector<ExprPtr> args;
};

struct NewExpr {
  TypeRef type;
  std::vector<ExprPtr> args;
  std::unique_ptr<TypeDecl> body;  // anonymous class body
};

struct NewArrayExpr {
  TypeRef element;  // dims == 0
  std::vector<ExprPtr> dim_exprs;
  int dims = 0;  // total dimensions, including the sized ones
  bool has_init = false;
  std::vector<ExprPtr> init;
};

struct AssignExpr {
  std::string op;  // "=", "+=", ...
  ExprPtr target;
  ExprPtr value;
};

struct BinaryExpr {
  std::string op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct UnaryExpr {
  std::string op;
  bool postfix = false;
  ExprPtr operand;
};

struct ConditionalExpr {
  ExprPtr cond;
  ExprPtr then_expr;
  ExprPtr else_expr;
};

struct CastExpr {
  TypeRef type;
  ExprPtr operand;
};

struct LambdaParam {
  std::string name;
  Location loc;
  std::optional<TypeRef> type;
};

struct LambdaExpr {
  std::vector<LambdaParam> params;
  bool parenthesized = true;
  ExprPtr body_expr;
  std::unique_ptr<Block> body_block;
};

struct IndexExpr {
  ExprPtr target;
  ExprPtr index;
};

struct ClassLiteralExpr {
  TypeRef type;
};

struct Expr {
  using Node = std::variant<LiteralExpr, NameExpr, ThisExpr, SuperExpr, FieldAccessExpr, CallExpr,
                            CtorCallExpr, NewExpr, NewArrayExpr, AssignExpr, BinaryExpr, UnaryExpr,
                            ConditionalExpr, CastExpr, LambdaExpr, IndexExpr, ClassLiteralExpr>;
  // For names, field accesses and calls: the identifier token. For `new`: the
  // type name token. For lambdas: the first token of the lambda.
  Location loc;
  Node node;

  template <class T>
  [[nodiscard]] const T* as() const {
    return std::get_if<T>(&node);
  }
};

// ---------------------------------------------------------------------------
// Statements

struct Block {
  Location loc;
  std::vector<Stmt> stmts;
};

struct LocalDeclStmt {
  bool is_final = false;
  TypeRef type;
  std::string name;
  Location name_loc;
  ExprPtr init;
};

struct ExprStmt {
  ExprPtr expr;
};

struct IfStmt {
  ExprPtr cond;
  std::unique_ptr<Stmt> then_stmt;
  std::unique_ptr<Stmt> else_stmt;
};

struct WhileStmt {
  ExprPtr cond;
  std::unique_ptr<Stmt> body;
};

struct ForStmt {
  std::vector<Stmt> init;  // LocalDeclStmt or ExprStmt
  ExprPtr cond;
  std::vector<ExprPtr> update;
  std::unique_ptr<Stmt> body;
};

struct ForEachStmt {
  bool is_final = false;
  TypeRef type;
  std::string name;
  Location name_loc;
  ExprPtr iterable;
  std::unique_ptr<Stmt> body;
};

struct ReturnStmt {
  ExprPtr value;
};

struct ThrowStmt {
  ExprPtr value;
};

struct CatchClause {
  std::vector<TypeRef> types;  // multi-catch alternatives
  std::string name;
  Location name_loc;
  std::unique_ptr<Block> body;
};

struct TryStmt {
  std::unique_ptr<Block> body;
  std::vector<CatchClause> catches;
  std::unique_ptr<Block> finally_block;
};

struct BreakStmt {};
struct ContinueStmt {};
struct EmptyStmt {};

struct BlockStmt {
  std::unique_ptr<Block> block;
};

struct Stmt {
  using Node = std::variant<LocalDeclStmt, ExprStmt, IfStmt, WhileStmt, ForStmt, ForEachStmt,
                            ReturnStmt, ThrowStmt, TryStmt, BreakStmt, ContinueStmt, EmptyStmt,
                            BlockStmt>;
  Location loc;
  Node node;

  template <class T>
  [[nodiscard]] const T* as() const {
    return std::get_if<T>(&node);
  }
};

// ---------------------------------------------------------------------------
// Declarations

enum class MemberKind { Method, Constructor, Field };
enum class TypeKind { Class, Interface };

struct Param {
  bool is_final = false;
  TypeRef type;
  std::string name;
  Location loc;
};

struct MemberDecl {
  MemberKind kind = MemberKind::Method;
  std::string name;
  ModifierSet modifiers;
  std::vector<TypeParam> type_params;
  std::optional<TypeRef> return_type;  // methods; nullopt means void
  std::vector<Param> params;
  std::vector<TypeRef> throws_refs;
  std::optional<TypeRef> field_type;  // fields only
  ExprPtr initializer;                // fields only
  std::unique_ptr<Block> body;
  Location location;  // name token
};

struct TypeDecl {
  TypeKind kind = TypeKind::Class;
  std::string simple_name;  // empty for anonymous class bodies
  ModifierSet modifiers;
  std::vector<TypeParam> type_params;
  std::vector<TypeRef> extends_refs;
  std::vector<TypeRef> implements_refs;
  std::vector<TypeRef> permits_refs;
  std::vector<MemberDecl> members;
  std::vector<TypeDecl> nested;
  Location location;  // name token (or the `{` of an anonymous body)

  [[nodiscard]] bool anonymous() const { return simple_name.empty(); }
};

struct ImportDecl {
  std::vector<std::string> name;
  bool on_demand = false;
  bool is_static = false;
  Location loc;

  [[nodiscard]] std::string qualified() const;
};

struct SourceUnit {
  std::string path;
  std::string package_name;
  std::vector<ImportDecl> imports;
  std::vector<TypeDecl> types;
};

}  // namespace ucov
