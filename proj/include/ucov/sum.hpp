#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ucov/ast.hpp"
#include "ucov/symbol_table.hpp"

namespace ucov {

enum class UseKind {
  TypeReference,
  Instantiation,
  Inheritance,
  Implementation,
  InterfaceExtension,
  ConstructorInvocation,
  MethodInvocation,
  StaticInvocation,
  Overriding,
  FieldRead,
  FieldWrite,
};

inline constexpr std::array<UseKind, 11> kAllUseKinds{
    UseKind::TypeReference,      UseKind::Instantiation,         UseKind::Inheritance,
    UseKind::Implementation,     UseKind::InterfaceExtension,    UseKind::ConstructorInvocation,
    UseKind::MethodInvocation,   UseKind::StaticInvocation,      UseKind::Overriding,
    UseKind::FieldRead,          UseKind::FieldWrite,
};

std::string_view use_kind_name(UseKind kind);
std::optional<UseKind> use_kind_from_name(std::string_view name);

enum class SymbolKind { Class, Interface, Method, Constructor, Field };

std::string_view symbol_kind_name(SymbolKind kind);
std::optional<SymbolKind> symbol_kind_from_name(std::string_view name);

/// Identity of an API symbol. Methods and fields use `Declaring.name` as
/// fqn, constructors the declaring type's fqn; methods and constructors add
/// their erased signature.
struct SymbolKey {
  std::string fqn;
  std::optional<std::string> signature;

  /// `pkg.T.m(int)` for methods, `pkg.T(int)` for constructors, the fqn
  /// otherwise.
  [[nodiscard]] std::string display() const;

  friend auto operator<=>(const SymbolKey&, const SymbolKey&) = default;
  friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
};

struct Symbol {
  SymbolKey key;
  SymbolKind kind = SymbolKind::Class;
  std::string declaring;  // members only, empty for types
  ModifierSet modifiers;
  bool exported = false;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

SymbolKey key_of(const TypeInfo& type);
SymbolKey key_of(const MemberInfo& member);

struct SumEntry {
  Symbol symbol;
  std::set<UseKind> uses;

  friend bool operator==(const SumEntry&, const SumEntry&) = default;
};

struct UsageModel {
  std::string library_name;
  std::string root;  // library source root when known
  std::map<SymbolKey, SumEntry> entries;

  [[nodiscard]] std::size_t legal_use_count() const;
  [[nodiscard]] const SumEntry* find(const SymbolKey& key) const;
  [[nodiscard]] bool allows(const SymbolKey& key, UseKind use) const;

  /// Equality ignores `root`.
  friend bool operator==(const UsageModel& a, const UsageModel& b) {
    return a.library_name == b.library_name && a.entries == b.entries;
  }
};

bool is_effectively_extensible(const TypeInfo& type);
bool is_exported(const TypeInfo& type, const SymbolTable& table);
bool is_exported(const MemberInfo& member, const SymbolTable& table);
/// Looks the symbol up in `table`; false if it is not a library declaration.
bool is_exported(const SymbolKey& key, const SymbolTable& table);

std::set<UseKind> legal_uses(const TypeInfo& type, const SymbolTable& table);
std::set<UseKind> legal_uses(const MemberInfo& member, const SymbolTable& table);

/// Every named library declaration (the set S), exported or not.
std::vector<Symbol> collect_symbols(const SymbolTable& table);

UsageModel build_sum(const SymbolTable& table, std::string library_name);
UsageModel build_sum(std::vector<std::shared_ptr<const SourceUnit>> library_units,
                     std::string library_name);

}  // namespace ucov
