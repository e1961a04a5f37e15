#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ucov/ast.hpp"

namespace ucov {

/// Where a declaration came from. Only Library declarations can be API
/// symbols; Client declarations are overlaid so client code can be resolved.
enum class Origin { Library, Client };

inline constexpr std::string_view kObjectType = "java.lang.Object";
inline constexpr std::string_view kStringType = "java.lang.String";

/// A type reference after name resolution and erasure.
struct ResolvedType {
  std::string name;  // FQN, primitive keyword, or the name as written if unresolved
  int dims = 0;
  bool known = false;  // declared in the table
  bool primitive = false;
  bool type_variable = false;  // `name` holds the variable's erasure

  /// Erased spelling used in signatures, e.g. `java.lang.String[]`.
  [[nodiscard]] std::string erased() const;
};

struct SupertypeRef {
  std::string fqn;
  bool external = false;  // not declared in the table
};

struct MemberInfo {
  MemberKind kind = MemberKind::Method;
  std::string name;
  std::string declaring;  // FQN of the declaring type
  std::string signature;  // erased `name(T1,T2)` for methods/constructors, empty for fields
  ModifierSet modifiers;
  std::vector<std::string> param_types;  // erased
  std::vector<bool> param_is_type_var;
  std::string value_type;  // erased return or field type; "void" for void methods and constructors
  bool value_is_type_var = false;
  const MemberDecl* decl = nullptr;  // null for synthesized members
  Location location;

  [[nodiscard]] std::string fqn() const { return declaring + "." + name; }
  [[nodiscard]] bool synthesized() const { return decl == nullptr; }
  [[nodiscard]] bool is_static() const { return modifiers.has(Modifier::Static); }
};

struct TypeInfo {
  std::string fqn;
  std::string simple_name;
  std::string package_name;
  std::string outer;  // FQN of the lexically enclosing type, empty at top level
  TypeKind kind = TypeKind::Class;
  ModifierSet modifiers;
  Origin origin = Origin::Library;
  const TypeDecl* decl = nullptr;
  const SourceUnit* unit = nullptr;
  bool anonymous = false;
  const TypeRef* anonymous_base = nullptr;  // the `T` of `new T(...) { ... }`
  Location location;

  std::optional<std::string> superclass;  // classes only
  std::vector<SupertypeRef> supertypes;   // direct supertypes, superclass first
  std::vector<MemberInfo> members;        // declaration order, synthesized constructor last
  std::vector<std::string> nested;        // FQNs of member types
  std::vector<std::pair<std::string, std::string>> type_params;  // name -> erasure

  [[nodiscard]] bool is_interface() const { return kind == TypeKind::Interface; }
  [[nodiscard]] const MemberInfo* find_member(std::string_view signature) const;
  [[nodiscard]] const MemberInfo* find_field(std::string_view name) const;
  [[nodiscard]] std::vector<const MemberInfo*> constructors() const;
};

/// Lexical scope used to resolve type names.
struct TypeContext {
  const SourceUnit* unit = nullptr;
  std::vector<const TypeInfo*> enclosing;                       // innermost first
  std::vector<std::pair<std::string, std::string>> type_vars;  // innermost first
};

/// Resolved declarations of a library, optionally overlaid with client code.
/// Immutable once built; all queries are const and safe to share across
/// threads.
class SymbolTable {
 public:
  using TypeMap = std::map<std::string, std::shared_ptr<const TypeInfo>, std::less<>>;

  SymbolTable() = default;

  [[nodiscard]] const TypeInfo* find_type(std::string_view fqn) const;
  [[nodiscard]] const TypeMap& types() const { return types_; }
  [[nodiscard]] const std::vector<std::shared_ptr<const SourceUnit>>& units() const { return units_; }

  /// Transitive supertypes in breadth-first order (nearest first), without
  /// duplicates and excluding `fqn` itself. External supertypes are included
  /// but not expanded.
  [[nodiscard]] std::vector<std::string> supertype_closure(std::string_view fqn) const;
  [[nodiscard]] bool is_subtype(std::string_view sub, std::string_view super) const;
  /// True if some supertype of `fqn` is outside the table, so subtyping
  /// against unknown types cannot be ruled out.
  [[nodiscard]] bool has_external_ancestor(std::string_view fqn) const;

  [[nodiscard]] ResolvedType resolve(const TypeRef& ref, const TypeContext& ctx) const;
  /// Resolves a simple or dotted type name; nullopt if nothing matches.
  [[nodiscard]] std::optional<ResolvedType> lookup_type_name(const std::vector<std::string>& name,
                                                             const TypeContext& ctx) const;
  [[nodiscard]] TypeContext context_for(const TypeInfo& type) const;
  [[nodiscard]] const TypeInfo* anonymous_type(const TypeDecl& body) const;

  /// Members called `name` of the given kind, declared in `fqn` or inherited,
  /// nearest declaration first and one per signature.
  [[nodiscard]] std::vector<const MemberInfo*> members_named(std::string_view fqn,
                                                             std::string_view name,
                                                             MemberKind kind) const;
  [[nodiscard]] const MemberInfo* find_field(std::string_view fqn, std::string_view name) const;
  /// Member types of `fqn` (declared or inherited) with the given simple name.
  [[nodiscard]] std::optional<std::string> member_type(std::string_view fqn,
                                                       std::string_view name) const;

 private:
  friend class TableBuilder;

  TypeMap types_;
  std::vector<std::shared_ptr<const SourceUnit>> units_;
  std::unordered_map<const TypeDecl*, std::string> anonymous_;
  bool inherited_lookup_ = true;
};

/// Builds the table of one library. FQNs are `package.Outer.Inner`;
/// anonymous classes are registered as `Outer$N`. A public zero-argument
/// constructor is synthesized for every named class that declares none.
/// Throws DuplicateSymbol or CyclicHierarchy.
SymbolTable build_symbol_table(std::vector<std::shared_ptr<const SourceUnit>> units);

/// Adds declarations on top of an existing table, client code by default.
/// Supertypes of the added types may refer to either part.
SymbolTable overlay_symbol_table(const SymbolTable& base,
                                 std::vector<std::shared_ptr<const SourceUnit>> units,
                                 Origin origin = Origin::Client);

/// FQNs of the named types declared in `unit`, nested types included.
std::vector<std::string> declared_type_names(const SourceUnit& unit);

}  // namespace ucov
