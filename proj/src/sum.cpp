#include "ucov/sum.hpp"

namespace ucov {

namespace {

constexpr std::array<std::string_view, 11> kUseNames{
    "TypeReference",      "Instantiation",    "Inheritance",      "Implementation",
    "InterfaceExtension", "ConstructorInvocation", "MethodInvocation", "StaticInvocation",
    "Overriding",         "FieldRead",        "FieldWrite",
};

constexpr std::array<std::string_view, 5> kSymbolKindNames{"Class", "Interface", "Method",
                                                           "Constructor", "Field"};

bool named_library_type(const TypeInfo& t) { return t.origin == Origin::Library && !t.anonymous; }

SymbolKind kind_of(const MemberInfo& m) {
  switch (m.kind) {
    case MemberKind::Method: return SymbolKind::Method;
    case MemberKind::Constructor: return SymbolKind::Constructor;
    case MemberKind::Field: return SymbolKind::Field;
  }
  return SymbolKind::Method;
}

}  // namespace

std::string_view use_kind_name(UseKind kind) { return kUseNames[static_cast<std::size_t>(kind)]; }

std::optional<UseKind> use_kind_from_name(std::string_view name) {
  for (UseKind k : kAllUseKinds)
    if (use_kind_name(k) == name) return k;
  return std::nullopt;
}

std::string_view symbol_kind_name(SymbolKind kind) {
  return kSymbolKindNames[static_cast<std::size_t>(kind)];
}

std::optional<SymbolKind> symbol_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSymbolKindNames.size(); ++i)
    if (kSymbolKindNames[i] == name) return static_cast<SymbolKind>(i);
  return std::nullopt;
}

std::string SymbolKey::display() const {
  if (!signature) return fqn;
  auto dot = fqn.rfind('.');
  return (dot == std::string::npos ? std::string() : fqn.substr(0, dot + 1)) + *signature;
}

SymbolKey key_of(const TypeInfo& type) { return {type.fqn, std::nullopt}; }

SymbolKey key_of(const MemberInfo& member) {
  switch (member.kind) {
    case MemberKind::Field: return {member.fqn(), std::nullopt};
    case MemberKind::Constructor: return {member.declaring, member.signature};
    case MemberKind::Method: break;
  }
  return {member.fqn(), member.signature};
}

std::size_t UsageModel::legal_use_count() const {
  std::size_t n = 0;
  for (const auto& [_, e] : entries) n += e.uses.size();
  return n;
}

const SumEntry* UsageModel::find(const SymbolKey& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

bool UsageModel::allows(const SymbolKey& key, UseKind use) const {
  const SumEntry* e = find(key);
  return e != nullptr && e->uses.count(use) > 0;
}

bool is_effectively_extensible(const TypeInfo& type) {
  if (type.modifiers.has(Modifier::Final) || type.modifiers.has(Modifier::Sealed)) return false;
  if (type.is_interface()) return true;
  for (const auto* c : type.constructors())
    if (c->modifiers.has(Modifier::Public) || c->modifiers.has(Modifier::Protected)) return true;
  return false;
}

bool is_exported(const TypeInfo& type, const SymbolTable& table) {
  if (!named_library_type(type)) return false;
  if (type.outer.empty()) return type.modifiers.has(Modifier::Public);
  const TypeInfo* outer = table.find_type(type.outer);
  if (outer == nullptr || !is_exported(*outer, table)) return false;
  if (type.modifiers.has(Modifier::Public)) return true;
  return type.modifiers.has(Modifier::Protected) && is_effectively_extensible(*outer);
}

bool is_exported(const MemberInfo& member, const SymbolTable& table) {
  const TypeInfo* owner = table.find_type(member.declaring);
  if (owner == nullptr || !is_exported(*owner, table)) return false;
  if (member.modifiers.has(Modifier::Public)) return true;
  return member.modifiers.has(Modifier::Protected) && is_effectively_extensible(*owner);
}

bool is_exported(const SymbolKey& key, const SymbolTable& table) {
  if (const TypeInfo* t = table.find_type(key.fqn)) {
    if (!key.signature) return is_exported(*t, table);
    if (const MemberInfo* ctor = t->find_member(*key.signature))
      return ctor->kind == MemberKind::Constructor && is_exported(*ctor, table);
  }
  auto dot = key.fqn.rfind('.');
  if (dot == std::string::npos) return false;
  const TypeInfo* owner = table.find_type(std::string_view(key.fqn).substr(0, dot));
  if (owner == nullptr) return false;
  const MemberInfo* m = key.signature ? owner->find_member(*key.signature)
                                      : owner->find_field(key.fqn.substr(dot + 1));
  return m != nullptr && is_exported(*m, table);
}

std::set<UseKind> legal_uses(const TypeInfo& type, const SymbolTable& table) {
  std::set<UseKind> uses{UseKind::TypeReference};
  const bool extensible = is_effectively_extensible(type);
  if (type.is_interface()) {
    if (extensible) uses.insert({UseKind::Implementation, UseKind::InterfaceExtension});
    return uses;
  }
  if (!type.modifiers.has(Modifier::Abstract)) {
    for (const auto* c : type.constructors()) {
      if (is_exported(*c, table)) {
        uses.insert(UseKind::Instantiation);
        break;
      }
    }
  }
  if (extensible) uses.insert(UseKind::Inheritance);
  return uses;
}

std::set<UseKind> legal_uses(const MemberInfo& member, const SymbolTable& table) {
  switch (member.kind) {
    case MemberKind::Constructor:
      return {UseKind::ConstructorInvocation};
    case MemberKind::Field:
      if (member.modifiers.has(Modifier::Final)) return {UseKind::FieldRead};
      return {UseKind::FieldRead, UseKind::FieldWrite};
    case MemberKind::Method: {
      if (member.is_static()) return {UseKind::StaticInvocation};
      std::set<UseKind> uses{UseKind::MethodInvocation};
      const TypeInfo* owner = table.find_type(member.declaring);
      if (!member.modifiers.has(Modifier::Final) && owner != nullptr &&
          is_effectively_extensible(*owner))
        uses.insert(UseKind::Overriding);
      return uses;
    }
  }
  return {};
}

std::vector<Symbol> collect_symbols(const SymbolTable& table) {
  std::vector<Symbol> out;
  for (const auto& [fqn, type] : table.types()) {
    if (!named_library_type(*type)) continue;
    out.push_back({key_of(*type), type->is_interface() ? SymbolKind::Interface : SymbolKind::Class,
                   "", type->modifiers, is_exported(*type, table)});
    for (const auto& m : type->members)
      out.push_back({key_of(m), kind_of(m), m.declaring, m.modifiers, is_exported(m, table)});
  }
  return out;
}

UsageModel build_sum(const SymbolTable& table, std::string library_name) {
  UsageModel model;
  model.library_name = std::move(library_name);
  for (const auto& [fqn, type] : table.types()) {
    if (!is_exported(*type, table)) continue;
    Symbol ts{key_of(*type), type->is_interface() ? SymbolKind::Interface : SymbolKind::Class,
              "", type->modifiers, true};
    model.entries[ts.key] = {ts, legal_uses(*type, table)};
    for (const auto& m : type->members) {
      if (!is_exported(m, table)) continue;
      Symbol ms{key_of(m), kind_of(m), m.declaring, m.modifiers, true};
      model.entries[ms.key] = {ms, legal_uses(m, table)};
    }
  }
  return model;
}

UsageModel build_sum(std::vector<std::shared_ptr<const SourceUnit>> library_units,
                     std::string library_name) {
  return build_sum(build_symbol_table(std::move(library_units)), std::move(library_name));
}

}  // namespace ucov
