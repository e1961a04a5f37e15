#include "ucov/suf.hpp"

#include <algorithm>

#include "ucov/errors.hpp"

namespace ucov {

std::set<UniqueUse> Footprint::unique_uses() const {
  std::set<UniqueUse> out;
  for (const auto& t : triples) out.emplace(t.symbol, t.use);
  return out;
}

bool overrides(const MemberInfo& derived, const MemberInfo& base) {
  if (derived.kind != MemberKind::Method || base.kind != MemberKind::Method) return false;
  if (derived.is_static() || base.is_static()) return false;
  if (base.modifiers.has(Modifier::Private) || base.modifiers.has(Modifier::PackagePrivate))
    return false;
  if (derived.name != base.name || derived.param_types.size() != base.param_types.size())
    return false;
  for (std::size_t i = 0; i < base.param_types.size(); ++i) {
    if (derived.param_types[i] == base.param_types[i]) continue;
    if (base.param_is_type_var[i] && !is_primitive_name(derived.param_types[i])) continue;
    return false;
  }
  return true;
}

namespace {

class Extractor {
 public:
  Extractor(const BoundUnit& bound, const UsageModel& sum, const SymbolTable& table, Footprint& out)
      : b_(bound), sum_(sum), t_(table), out_(out) {}

  void run() {
    for (const auto& site : b_.type_refs) type_site(site);
    for (const Expr* e : b_.exprs) expression(*e, b_.bindings.at(e));
    for (const auto& call : b_.implicit_super)
      if (call.target.member != nullptr && library(*call.target.member))
        emit(key_of(*call.target.member), UseKind::ConstructorInvocation, call.location);
    for (const TypeInfo* type : b_.types)
      if (type->origin == Origin::Client) overriding(*type);
  }

 private:
  const BoundUnit& b_;
  const UsageModel& sum_;
  const SymbolTable& t_;
  Footprint& out_;

  static bool library(const TypeInfo* t) { return t != nullptr && t->origin == Origin::Library; }
  bool library(const MemberInfo& m) const { return library(t_.find_type(m.declaring)); }

  void illegal(const SymbolKey& key, UseKind use, const Location& loc) {
    out_.diagnostics.push_back({loc, DiagnosticKind::IllegalUse,
                                key.display() + " does not allow " + std::string(use_kind_name(use))});
  }

  void emit(const SymbolKey& key, UseKind use, const Location& loc) {
    if (sum_.allows(key, use))
      out_.triples.insert({key, use, loc});
    else
      illegal(key, use, loc);
  }

  // Both triples or neither.
  void emit_pair(const SymbolKey& k1, UseKind u1, const SymbolKey& k2, UseKind u2,
                 const Location& loc) {
    const bool ok1 = sum_.allows(k1, u1), ok2 = sum_.allows(k2, u2);
    if (ok1 && ok2) {
      out_.triples.insert({k1, u1, loc});
      out_.triples.insert({k2, u2, loc});
      return;
    }
    if (!ok1) illegal(k1, u1, loc);
    if (!ok2) illegal(k2, u2, loc);
  }

  void type_site(const TypeRefSite& site) {
    const TypeInfo* type = site.type.known ? t_.find_type(site.type.name) : nullptr;
    if (!library(type)) return;
    const SymbolKey key = key_of(*type);
    const Location& loc = site.ref->loc;
    const ExprBinding* nb = site.new_expr != nullptr ? b_.binding(*site.new_expr) : nullptr;
    switch (site.role) {
      case TypeRefRole::Reference:
        emit(key, UseKind::TypeReference, loc);
        break;
      case TypeRefRole::Instantiated:
        if (type->is_interface()) {
          illegal(key, UseKind::Instantiation, loc);
        } else if (nb != nullptr && nb->member != nullptr) {
          emit_pair(key, UseKind::Instantiation, key_of(*nb->member), UseKind::ConstructorInvocation,
                    loc);
        }
        break;
      case TypeRefRole::AnonymousBase:
        if (type->is_interface()) {
          emit(key, UseKind::Implementation, loc);
        } else {
          emit(key, UseKind::Inheritance, loc);
          if (nb != nullptr && nb->member != nullptr)
            emit(key_of(*nb->member), UseKind::ConstructorInvocation, loc);
        }
        break;
      case TypeRefRole::Extends:
        emit(key, UseKind::Inheritance, loc);
        break;
      case TypeRefRole::Implements:
        emit(key, UseKind::Implementation, loc);
        break;
      case TypeRefRole::InterfaceExtends:
        emit(key, UseKind::InterfaceExtension, loc);
        break;
    }
  }

  void expression(const Expr& e, const ExprBinding& bd) {
    if (e.as<LambdaExpr>() != nullptr) {
      if (library(bd.lambda_interface) && bd.lambda_method != nullptr)
        emit_pair(key_of(*bd.lambda_interface), UseKind::Implementation, key_of(*bd.lambda_method),
                  UseKind::Overriding, e.loc);
      return;
    }
    if (bd.member == nullptr) return;
    const MemberInfo& m = *bd.member;
    if (e.as<CallExpr>() != nullptr) {
      invocation(e, bd, m);
    } else if (e.as<CtorCallExpr>() != nullptr) {
      if (library(m)) emit(key_of(m), UseKind::ConstructorInvocation, e.loc);
    } else if (m.kind == MemberKind::Field && library(m)) {
      if (bd.access != Access::Write) emit(key_of(m), UseKind::FieldRead, e.loc);
      if (bd.access != Access::Read) emit(key_of(m), UseKind::FieldWrite, e.loc);
    }
  }

  void invocation(const Expr& e, const ExprBinding& bd, const MemberInfo& m) {
    if (m.is_static()) {
      if (library(m)) emit(key_of(m), UseKind::StaticInvocation, e.loc);
      return;
    }
    if (library(m)) emit(key_of(m), UseKind::MethodInvocation, e.loc);
    if (bd.receiver.empty()) return;
    for (const auto& s : t_.supertype_closure(bd.receiver)) {
      const TypeInfo* st = t_.find_type(s);
      if (!library(st)) continue;
      for (const auto& sm : st->members) {
        if (&sm == &m || sm.kind != MemberKind::Method || sm.is_static() || sm.name != m.name)
          continue;
        if (sm.signature != m.signature && !overrides(m, sm)) continue;
        const SymbolKey key = key_of(sm);
        if (sum_.allows(key, UseKind::MethodInvocation))
          out_.triples.insert({key, UseKind::MethodInvocation, e.loc});
      }
    }
  }

  void overriding(const TypeInfo& type) {
    const auto closure = t_.supertype_closure(type.fqn);
    for (const auto& m : type.members) {
      if (m.kind != MemberKind::Method || m.is_static()) continue;
      for (const auto& s : closure) {
        const TypeInfo* st = t_.find_type(s);
        if (!library(st)) continue;
        for (const auto& base : st->members)
          if (overrides(m, base)) emit(key_of(base), UseKind::Overriding, m.location);
      }
    }
  }
};

void normalize(std::vector<Diagnostic>& d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
}

void require_same_model(const Footprint& a, const Footprint& b) {
  if (a.library != b.library)
    throw ModelMismatch("footprints of different libraries: '" + a.library + "' and '" + b.library +
                        "'");
}

}  // namespace

Footprint extract_bound(const BoundUnit& bound, const UsageModel& sum, const SymbolTable& table) {
  Footprint out;
  out.library = sum.library_name;
  Extractor(bound, sum, table, out).run();
  out.diagnostics.insert(out.diagnostics.end(), bound.diagnostics.begin(), bound.diagnostics.end());
  normalize(out.diagnostics);
  return out;
}

Footprint extract_uses(const std::vector<std::shared_ptr<const SourceUnit>>& client_units,
                       const UsageModel& sum, const SymbolTable& library_table, std::string label) {
  const SymbolTable table = overlay_symbol_table(library_table, client_units);
  Footprint out;
  out.label = std::move(label);
  out.library = sum.library_name;
  for (const auto& unit : client_units) {
    Footprint part = extract_bound(bind_unit(*unit, table), sum, table);
    out.triples.merge(part.triples);
    out.diagnostics.insert(out.diagnostics.end(), part.diagnostics.begin(), part.diagnostics.end());
  }
  normalize(out.diagnostics);
  return out;
}

Footprint merge(const Footprint& a, const Footprint& b) {
  return merge(a, b, a.label + "+" + b.label);
}

Footprint merge(const Footprint& a, const Footprint& b, std::string label) {
  require_same_model(a, b);
  Footprint out;
  out.label = std::move(label);
  out.library = a.library;
  out.triples = a.triples;
  out.triples.insert(b.triples.begin(), b.triples.end());
  out.diagnostics = a.diagnostics;
  out.diagnostics.insert(out.diagnostics.end(), b.diagnostics.begin(), b.diagnostics.end());
  normalize(out.diagnostics);
  return out;
}

Footprint diff(const Footprint& a, const Footprint& b) {
  require_same_model(a, b);
  const auto excluded = b.unique_uses();
  Footprint out;
  out.label = a.label;
  out.library = a.library;
  for (const auto& t : a.triples)
    if (excluded.count({t.symbol, t.use}) == 0) out.triples.insert(t);
  return out;
}

void check_governed(const Footprint& f, const UsageModel& sum) {
  if (f.library != sum.library_name)
    throw ModelMismatch("footprint '" + f.label + "' is for library '" + f.library +
                        "', model is '" + sum.library_name + "'");
  for (const auto& t : f.triples)
    if (!sum.allows(t.symbol, t.use))
      throw ModelMismatch("footprint '" + f.label + "' uses " + t.symbol.display() + " as " +
                          std::string(use_kind_name(t.use)) + ", which the model does not allow");
}

}  // namespace ucov
