#pragma once

// Expression-level resolution for one compilation unit: static types, the
// members that names and invocations refer to, lambda targets, and every
// type-reference site with its syntactic role.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ucov/ast.hpp"
#include "ucov/symbol_table.hpp"

namespace ucov {

enum class DiagnosticKind { Unresolved, Ambiguous, IllegalUse, ParseFailure };

std::string_view diagnostic_kind_name(DiagnosticKind kind);
std::optional<DiagnosticKind> diagnostic_kind_from_name(std::string_view name);

struct Diagnostic {
  Location location;
  DiagnosticKind kind = DiagnosticKind::Unresolved;
  std::string message;

  friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// FQN, primitive keyword, array spelling `T[]`, "null" or "void";
/// nullopt is Unknown.
using StaticType = std::optional<std::string>;

enum class ResolutionStatus { Resolved, Unresolved, Ambiguous };

struct MethodResolution {
  ResolutionStatus status = ResolutionStatus::Unresolved;
  const MemberInfo* member = nullptr;  // set unless Unresolved
};

/// Picks one of `candidates` for the given argument types. Arity filters
/// first; then the applicable candidates without boxing, then with boxing.
/// Among applicable candidates the most specific wins; if none is most
/// specific the result is Ambiguous with the smallest signature. When no
/// candidate is applicable the arity matches are used as they are.
MethodResolution select_overload(const SymbolTable& table,
                                 const std::vector<const MemberInfo*>& candidates,
                                 const std::vector<StaticType>& args);

/// Methods of `receiver` and its supertypes; interfaces also see the
/// methods of java.lang.Object when the table declares it.
MethodResolution resolve_method(const SymbolTable& table, std::string_view receiver,
                                std::string_view name, const std::vector<StaticType>& args);
MethodResolution resolve_constructor(const SymbolTable& table, std::string_view type,
                                     const std::vector<StaticType>& args);

/// The single abstract method of a functional interface, or null.
const MemberInfo* functional_method(const SymbolTable& table, std::string_view interface_fqn);

/// True if a value of type `from` can be passed where `to` is expected.
bool is_assignable(const SymbolTable& table, const StaticType& from, std::string_view to,
                   bool allow_boxing);

/// Static type of a member's value (field type or return type). Unbounded
/// type variables are Unknown.
StaticType value_type(const MemberInfo& member);

struct Environment {
  const TypeInfo* self = nullptr;
  TypeContext context;
  std::map<std::string, StaticType, std::less<>> locals;
};

/// Static type of `expr` in `env`. Unknown when any link cannot be resolved.
StaticType static_type_of(const Expr& expr, const Environment& env, const SymbolTable& table);

enum class Access { Read, Write, ReadWrite };

struct ExprBinding {
  StaticType type;
  const MemberInfo* member = nullptr;  // field, method or constructor named by the node
  std::string receiver;                // type the member was looked up in
  ResolutionStatus status = ResolutionStatus::Resolved;
  bool qualified_by_type = false;  // `T.m()`, `T.f`, or a static import
  bool super_access = false;       // `super.m()`, `super(...)`
  Access access = Access::Read;
  const TypeInfo* denotes_type = nullptr;  // the node is a type name used as a qualifier
  const TypeInfo* lambda_interface = nullptr;
  const MemberInfo* lambda_method = nullptr;
  const TypeInfo* anonymous = nullptr;  // `new T() { ... }`
};

enum class TypeRefRole {
  Reference,        // any type position that is not one of the heads below
  Instantiated,     // head of `new T(...)`
  AnonymousBase,    // head of `new T(...) { ... }`
  Extends,          // class extends clause
  Implements,       // class implements clause
  InterfaceExtends  // interface extends clause
};

struct TypeRefSite {
  const TypeRef* ref = nullptr;
  ResolvedType type;
  TypeRefRole role = TypeRefRole::Reference;
  const Expr* new_expr = nullptr;  // for Instantiated and AnonymousBase
};

/// `super()` inserted into a declared constructor that does not start with
/// an explicit `this(...)` or `super(...)`.
struct ImplicitSuperCall {
  Location location;  // constructor name token
  std::string superclass;
  MethodResolution target;
};

struct BoundUnit {
  const SourceUnit* unit = nullptr;
  std::vector<const TypeInfo*> types;  // declared in the unit, anonymous classes included
  std::vector<TypeRefSite> type_refs;
  std::vector<const Expr*> exprs;  // every bound expression, in completion order
  std::unordered_map<const Expr*, ExprBinding> bindings;
  std::vector<ImplicitSuperCall> implicit_super;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] const ExprBinding* binding(const Expr& e) const;
};

/// Binds every expression and type reference of `unit`, whose declarations
/// must already be in `table`.
BoundUnit bind_unit(const SourceUnit& unit, const SymbolTable& table);

}  // namespace ucov
