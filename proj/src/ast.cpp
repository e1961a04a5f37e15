#include "ucov/ast.hpp"

#include <array>
#include <bit>

namespace ucov {

namespace {

constexpr std::array kModifierOrder = {
    Modifier::Public, Modifier::Protected, Modifier::Private, Modifier::PackagePrivate,
    Modifier::Abstract, Modifier::Static, Modifier::Final, Modifier::Sealed, Modifier::Default,
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

}  // namespace

std::string to_string(const Location& loc) {
  return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

int ModifierSet::visibility_count() const {
  return static_cast<int>(has(Modifier::Public)) + static_cast<int>(has(Modifier::Protected)) +
         static_cast<int>(has(Modifier::Private)) +
         static_cast<int>(has(Modifier::PackagePrivate));
}

std::vector<std::string> ModifierSet::names() const {
  std::vector<std::string> out;
  for (Modifier m : kModifierOrder) {
    if (has(m)) out.emplace_back(modifier_name(m));
  }
  return out;
}

std::string_view modifier_name(Modifier m) {
  switch (m) {
    case Modifier::Public: return "public";
    case Modifier::Protected: return "protected";
    case Modifier::Private: return "private";
    case Modifier::PackagePrivate: return "packagePrivate";
    case Modifier::Abstract: return "abstract";
    case Modifier::Final: return "final";
    case Modifier::Sealed: return "sealed";
    case Modifier::Static: return "static";
    case Modifier::Default: return "default";
  }
  return "?";
}

std::optional<Modifier> modifier_from_name(std::string_view name) {
  for (Modifier m : kModifierOrder) {
    if (modifier_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string TypeRef::qualified() const { return join(name); }

bool TypeRef::is_primitive() const { return name.size() == 1 && is_primitive_name(name[0]); }

bool is_primitive_name(std::string_view name) {
  return name == "int" || name == "long" || name == "short" || name == "byte" || name == "char" ||
         name == "boolean" || name == "float" || name == "double";
}

std::string ImportDecl::qualified() const { return join(name); }

}  // namespace ucov
