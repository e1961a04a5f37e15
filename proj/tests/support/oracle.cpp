#include "support/oracle.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>

namespace ucov::testing {
namespace {

std::string join(const std::vector<std::string>& parts, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i == 0 ? "" : ".") + parts[i];
  return out;
}

struct Decl {
  std::string fqn;
  bool library = false;
  const TypeDecl* decl = nullptr;
  const SourceUnit* unit = nullptr;
  const Decl* outer = nullptr;
  const TypeRef* anon_ref = nullptr;
};

struct Erased {
  std::string name;  // "" when unknown
  bool type_var = false;
};

struct Method {
  const Decl* owner = nullptr;
  const MemberDecl* decl = nullptr;
  std::string sig;
  std::vector<Erased> params;
};

enum class Mode { Read, Write, ReadWrite };

struct Scope {
  const SourceUnit* unit = nullptr;
  const Decl* decl = nullptr;
  std::vector<const std::vector<TypeParam>*> method_tparams;
};

class Oracle {
 public:
  Oracle(const std::vector<std::shared_ptr<const SourceUnit>>& library,
         const std::vector<std::shared_ptr<const SourceUnit>>& clients, const UsageModel& sum)
      : sum_(sum) {
    for (const auto& u : library)
      for (const auto& t : u->types) add(t, *u, nullptr, u->package_name, true);
    for (const auto& u : clients)
      for (const auto& t : u->types) add(t, *u, nullptr, u->package_name, false);
    clients_ = clients;
  }

  std::set<UseTriple> run() {
    for (const auto& u : clients_)
      for (const auto& t : u->types) visit_type(*by_decl_.at(&t));
    return out_;
  }

 private:
  const UsageModel& sum_;
  std::vector<std::shared_ptr<const SourceUnit>> clients_;
  std::map<std::string, std::unique_ptr<Decl>> decls_;
  std::map<const TypeDecl*, const Decl*> by_decl_;
  std::map<std::string, int> anon_counter_;
  std::set<UseTriple> out_;
  std::vector<std::map<std::string, std::string>> locals_;
  std::vector<std::optional<TypeRef>> returns_;

  void add(const TypeDecl& t, const SourceUnit& u, const Decl* outer, const std::string& prefix,
           bool library) {
    auto d = std::make_unique<Decl>();
    d->fqn = prefix.empty() ? t.simple_name : prefix + "." + t.simple_name;
    d->library = library;
    d->decl = &t;
    d->unit = &u;
    d->outer = outer;
    const Decl* raw = d.get();
    by_decl_[&t] = raw;
    decls_[d->fqn] = std::move(d);
    for (const auto& n : t.nested) add(n, u, raw, raw->fqn, library);
  }

  const Decl* anonymous(const TypeDecl& body, const TypeRef& base, const Scope& s) {
    if (auto it = by_decl_.find(&body); it != by_decl_.end()) return it->second;
    auto d = std::make_unique<Decl>();
    const std::string host = s.decl->fqn;
    d->fqn = host + "$" + std::to_string(++anon_counter_[host]);
    d->decl = &body;
    d->unit = s.unit;
    d->outer = s.decl;
    d->anon_ref = &base;
    const Decl* raw = d.get();
    by_decl_[&body] = raw;
    decls_[d->fqn] = std::move(d);
    return raw;
  }

  const Decl* find(const std::string& fqn) const {
    auto it = decls_.find(fqn);
    return it == decls_.end() ? nullptr : it->second.get();
  }

  // ---- names and types

  std::optional<Erased> type_var(const std::string& n, const Scope& s) {
    auto erase = [&](const TypeParam& tp) {
      Erased e{"java.lang.Object", true};
      if (!tp.bounds.empty()) e.name = resolve(tp.bounds.front(), s).name;
      return e;
    };
    for (auto it = s.method_tparams.rbegin(); it != s.method_tparams.rend(); ++it)
      for (const auto& tp : **it)
        if (tp.name == n) return erase(tp);
    for (const Decl* d = s.decl; d != nullptr; d = d->outer)
      for (const auto& tp : d->decl->type_params)
        if (tp.name == n) return erase(tp);
    return std::nullopt;
  }

  std::string simple_type(const std::string& n, const Scope& s) {
    for (const Decl* d = s.decl; d != nullptr; d = d->outer) {
      for (const auto& nested : d->decl->nested)
        if (nested.simple_name == n) return d->fqn + "." + n;
      if (!d->decl->anonymous() && d->decl->simple_name == n) return d->fqn;
    }
    for (const auto& imp : s.unit->imports)
      if (!imp.on_demand && !imp.is_static && imp.name.back() == n) return imp.qualified();
    const std::string& pkg = s.unit->package_name;
    if (find(pkg.empty() ? n : pkg + "." + n)) return pkg.empty() ? n : pkg + "." + n;
    for (const auto& imp : s.unit->imports)
      if (imp.on_demand && !imp.is_static && find(imp.qualified() + "." + n))
        return imp.qualified() + "." + n;
    if (find("java.lang." + n)) return "java.lang." + n;
    return n;
  }

  Erased resolve(const TypeRef& ref, const Scope& s) {
    if (ref.name.empty()) return {"java.lang.Object", false};
    std::string suffix;
    for (int i = 0; i < ref.dims; ++i) suffix += "[]";
    if (ref.name.size() == 1 && is_primitive_name(ref.name[0])) return {ref.name[0] + suffix, false};
    if (ref.name.size() == 1) {
      if (auto tv = type_var(ref.name[0], s)) return {tv->name + suffix, ref.dims == 0};
      return {simple_type(ref.name[0], s) + suffix, false};
    }
    const std::string q = join(ref.name, ref.name.size());
    if (find(q)) return {q + suffix, false};
    std::string head = simple_type(ref.name[0], s);
    if (find(head)) {
      for (std::size_t i = 1; i < ref.name.size(); ++i) head += "." + ref.name[i];
      if (find(head)) return {head + suffix, false};
    }
    return {q + suffix, false};
  }

  Scope scope_of(const Decl& d) {
    Scope s;
    s.unit = d.unit;
    s.decl = &d;
    return s;
  }

  std::vector<std::string> supers(const Decl& d) {
    if (d.anon_ref != nullptr) {
      Scope s = scope_of(*d.outer);
      return {resolve(*d.anon_ref, s).name};
    }
    Scope s = scope_of(d);
    std::vector<std::string> out;
    for (const auto& r : d.decl->extends_refs) out.push_back(resolve(r, s).name);
    for (const auto& r : d.decl->implements_refs) out.push_back(resolve(r, s).name);
    return out;
  }

  std::optional<std::string> superclass(const Decl& d) {
    if (d.decl->kind == TypeKind::Interface) return std::nullopt;
    if (d.anon_ref != nullptr) {
      auto base = supers(d).front();
      const Decl* b = find(base);
      if (b != nullptr && b->decl->kind == TypeKind::Interface) return std::nullopt;
      return base;
    }
    if (d.decl->extends_refs.empty()) return std::nullopt;
    return supers(d).front();
  }

  std::vector<std::string> closure(const std::string& fqn) {
    std::vector<std::string> out;
    std::set<std::string> seen{fqn};
    std::deque<std::string> q{fqn};
    while (!q.empty()) {
      const Decl* d = find(q.front());
      q.pop_front();
      if (d == nullptr) continue;
      for (const auto& s : supers(*d))
        if (seen.insert(s).second) {
          out.push_back(s);
          q.push_back(s);
        }
    }
    return out;
  }

  bool is_interface(const std::string& fqn) {
    const Decl* d = find(fqn);
    return d != nullptr && d->decl->kind == TypeKind::Interface;
  }
  bool is_library(const std::string& fqn) {
    const Decl* d = find(fqn);
    return d != nullptr && d->library;
  }

  // ---- members

  Method method_of(const Decl& owner, const MemberDecl& m) {
    Scope s = scope_of(owner);
    s.method_tparams.push_back(&m.type_params);
    Method out{&owner, &m, {}, {}};
    std::string sig = (m.kind == MemberKind::Constructor ? owner.decl->simple_name : m.name) + "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      out.params.push_back(resolve(m.params[i].type, s));
      sig += (i == 0 ? "" : ",") + out.params.back().name;
    }
    out.sig = sig + ")";
    return out;
  }

  std::vector<Method> methods_named(const std::string& fqn, const std::string& name) {
    std::vector<Method> out;
    std::set<std::string> seen;
    std::vector<std::string> order{fqn};
    for (const auto& s : closure(fqn)) order.push_back(s);
    for (const auto& t : order) {
      const Decl* d = find(t);
      if (d == nullptr) continue;
      for (const auto& m : d->decl->members)
        if (m.kind == MemberKind::Method && m.name == name) {
          Method mi = method_of(*d, m);
          if (seen.insert(mi.sig).second) out.push_back(mi);
        }
    }
    return out;
  }

  static std::optional<Method> by_arity(const std::vector<Method>& ms, std::size_t n) {
    for (const auto& m : ms)
      if (m.params.size() == n) return m;
    return std::nullopt;
  }

  std::optional<std::pair<const Decl*, const MemberDecl*>> field(const std::string& fqn,
                                                                 const std::string& name) {
    std::vector<std::string> order{fqn};
    for (const auto& s : closure(fqn)) order.push_back(s);
    for (const auto& t : order) {
      const Decl* d = find(t);
      if (d == nullptr) continue;
      for (const auto& m : d->decl->members)
        if (m.kind == MemberKind::Field && m.name == name) return std::make_pair(d, &m);
    }
    return std::nullopt;
  }

  // Constructor signature of `type` for `arity` arguments; a class without
  // declared constructors has the implicit zero-argument one.
  std::optional<std::string> ctor(const std::string& type, std::size_t arity) {
    const Decl* d = find(type);
    if (d == nullptr || d->decl->kind == TypeKind::Interface) return std::nullopt;
    bool any = false;
    for (const auto& m : d->decl->members) {
      if (m.kind != MemberKind::Constructor) continue;
      any = true;
      if (m.params.size() == arity) return method_of(*d, m).sig;
    }
    if (!any && arity == 0) return d->decl->simple_name + "()";
    return std::nullopt;
  }

  std::optional<Method> functional(const std::string& iface) {
    if (!is_interface(iface)) return std::nullopt;
    std::vector<std::string> order{iface};
    for (const auto& s : closure(iface)) order.push_back(s);
    std::vector<Method> found;
    std::set<std::string> seen;
    for (const auto& t : order) {
      const Decl* d = find(t);
      if (d == nullptr) continue;
      for (const auto& m : d->decl->members) {
        if (m.kind != MemberKind::Method || m.body || m.modifiers.has(Modifier::Static)) continue;
        if (m.name == "equals" || m.name == "hashCode" || m.name == "toString") continue;
        Method mi = method_of(*d, m);
        if (seen.insert(mi.sig).second) found.push_back(mi);
      }
    }
    if (found.size() != 1) return std::nullopt;
    return found.front();
  }

  Erased return_type(const Method& m) {
    if (!m.decl->return_type) return {"void", false};
    Scope s = scope_of(*m.owner);
    s.method_tparams.push_back(&m.decl->type_params);
    Erased e = resolve(*m.decl->return_type, s);
    if (e.type_var) return {"", false};
    return e;
  }

  Erased field_type(const Decl& owner, const MemberDecl& f) {
    Erased e = resolve(*f.field_type, scope_of(owner));
    if (e.type_var) return {"", false};
    return e;
  }

  static bool overrides(const Method& derived, const Method& base) {
    if (base.decl->modifiers.has(Modifier::Static) || derived.decl->modifiers.has(Modifier::Static))
      return false;
    if (base.decl->modifiers.has(Modifier::Private) ||
        base.decl->modifiers.has(Modifier::PackagePrivate))
      return false;
    if (derived.decl->name != base.decl->name || derived.params.size() != base.params.size())
      return false;
    for (std::size_t i = 0; i < base.params.size(); ++i) {
      if (derived.params[i].name == base.params[i].name) continue;
      if (base.params[i].type_var && !is_primitive_name(derived.params[i].name)) continue;
      return false;
    }
    return true;
  }

  // ---- keys and emission

  static SymbolKey type_key(const std::string& fqn) { return {fqn, std::nullopt}; }
  static SymbolKey method_key(const Method& m) {
    if (m.decl->kind == MemberKind::Constructor) return {m.owner->fqn, m.sig};
    return {m.owner->fqn + "." + m.decl->name, m.sig};
  }

  void emit(const SymbolKey& k, UseKind u, const Location& loc) {
    if (sum_.allows(k, u)) out_.insert({k, u, loc});
  }
  void emit_pair(const SymbolKey& k1, UseKind u1, const SymbolKey& k2, UseKind u2,
                 const Location& loc) {
    if (sum_.allows(k1, u1) && sum_.allows(k2, u2)) {
      out_.insert({k1, u1, loc});
      out_.insert({k2, u2, loc});
    }
  }

  // ---- type reference sites

  void ref_args(const TypeRef& ref, const Scope& s) {
    for (const auto& a : ref.args) reference(a, s);
    for (const auto& b : ref.bound) reference(b, s);
  }

  void reference(const TypeRef& ref, const Scope& s) {
    if (!ref.name.empty()) {
      Erased e = resolve(ref, s);
      std::string base = e.name.substr(0, e.name.find('['));
      if (!e.type_var && is_library(base)) emit(type_key(base), UseKind::TypeReference, ref.loc);
    }
    ref_args(ref, s);
  }

  // ---- declarations

  void visit_type(const Decl& d) {
    Scope s = scope_of(d);
    const TypeDecl& t = *d.decl;
    if (d.anon_ref == nullptr) {
      for (const auto& r : t.extends_refs) {
        const std::string name = resolve(r, s).name;
        if (is_library(name))
          emit(type_key(name),
               t.kind == TypeKind::Interface ? UseKind::InterfaceExtension : UseKind::Inheritance, r.loc);
        ref_args(r, s);
      }
      for (const auto& r : t.implements_refs) {
        const std::string name = resolve(r, s).name;
        if (is_library(name)) emit(type_key(name), UseKind::Implementation, r.loc);
        ref_args(r, s);
      }
      for (const auto& tp : t.type_params)
        for (const auto& b : tp.bounds) reference(b, s);
    }
    overriding(d);
    for (const auto& m : t.members) member(d, m);
    for (const auto& n : t.nested) visit_type(*by_decl_.at(&n));
  }

  void overriding(const Decl& d) {
    const auto sup = closure(d.fqn);
    for (const auto& m : d.decl->members) {
      if (m.kind != MemberKind::Method || m.modifiers.has(Modifier::Static)) continue;
      const Method derived = method_of(d, m);
      for (const auto& sname : sup) {
        const Decl* sd = find(sname);
        if (sd == nullptr || !sd->library) continue;
        for (const auto& bm : sd->decl->members) {
          if (bm.kind != MemberKind::Method) continue;
          const Method base = method_of(*sd, bm);
          if (overrides(derived, base)) emit(method_key(base), UseKind::Overriding, m.location);
        }
      }
    }
  }

  void member(const Decl& d, const MemberDecl& m) {
    Scope s = scope_of(d);
    s.method_tparams.push_back(&m.type_params);
    for (const auto& tp : m.type_params)
      for (const auto& b : tp.bounds) reference(b, s);
    if (m.kind == MemberKind::Field) {
      reference(*m.field_type, s);
      if (m.initializer) {
        locals_.emplace_back();
        returns_.emplace_back(std::nullopt);
        value_with_target(*m.initializer, resolve(*m.field_type, s).name, s);
        returns_.pop_back();
        locals_.pop_back();
      }
      return;
    }
    if (m.return_type) reference(*m.return_type, s);
    locals_.emplace_back();
    for (const auto& p : m.params) {
      reference(p.type, s);
      locals_.back()[p.name] = resolve(p.type, s).name;
    }
    for (const auto& th : m.throws_refs) reference(th, s);
    if (m.kind == MemberKind::Constructor && m.body) implicit_super(d, m);
    returns_.push_back(m.return_type);
    if (m.body) block(*m.body, s);
    returns_.pop_back();
    locals_.pop_back();
  }

  void implicit_super(const Decl& d, const MemberDecl& ctor_decl) {
    if (d.anon_ref != nullptr) return;
    const auto& stmts = ctor_decl.body->stmts;
    if (!stmts.empty())
      if (const auto* es = stmts.front().as<ExprStmt>(); es && es->expr->as<CtorCallExpr>()) return;
    auto sc = superclass(d);
    if (!sc || !is_library(*sc)) return;
    if (auto sig = ctor(*sc, 0)) emit({*sc, *sig}, UseKind::ConstructorInvocation, ctor_decl.location);
  }

  // ---- statements

  void block(const Block& b, const Scope& s) {
    locals_.emplace_back();
    for (const auto& st : b.stmts) stmt(st, s);
    locals_.pop_back();
  }

  void sub(const Stmt& st, const Scope& s) {
    locals_.emplace_back();
    stmt(st, s);
    locals_.pop_back();
  }

  void stmt(const Stmt& st, const Scope& s) {
    if (const auto* x = st.as<LocalDeclStmt>()) {
      reference(x->type, s);
      const std::string type = resolve(x->type, s).name;
      if (x->init) value_with_target(*x->init, type, s);
      locals_.back()[x->name] = type;
    } else if (const auto* x = st.as<ExprStmt>()) {
      value(*x->expr, s);
    } else if (const auto* x = st.as<IfStmt>()) {
      value(*x->cond, s);
      sub(*x->then_stmt, s);
      if (x->else_stmt) sub(*x->else_stmt, s);
    } else if (const auto* x = st.as<WhileStmt>()) {
      value(*x->cond, s);
      sub(*x->body, s);
    } else if (const auto* x = st.as<ForStmt>()) {
      locals_.emplace_back();
      for (const auto& i : x->init) stmt(i, s);
      if (x->cond) value(*x->cond, s);
      for (const auto& u : x->update) value(*u, s);
      sub(*x->body, s);
      locals_.pop_back();
    } else if (const auto* x = st.as<ForEachStmt>()) {
      reference(x->type, s);
      value(*x->iterable, s);
      locals_.emplace_back();
      locals_.back()[x->name] = resolve(x->type, s).name;
      sub(*x->body, s);
      locals_.pop_back();
    } else if (const auto* x = st.as<ReturnStmt>()) {
      if (x->value) {
        std::string target;
        if (!returns_.empty() && returns_.back()) target = resolve(*returns_.back(), s).name;
        value_with_target(*x->value, target, s);
      }
    } else if (const auto* x = st.as<ThrowStmt>()) {
      value(*x->value, s);
    } else if (const auto* x = st.as<TryStmt>()) {
      block(*x->body, s);
      for (const auto& c : x->catches) {
        for (const auto& t : c.types) reference(t, s);
        locals_.emplace_back();
        locals_.back()[c.name] = resolve(c.types.front(), s).name;
        block(*c.body, s);
        locals_.pop_back();
      }
      if (x->finally_block) block(*x->finally_block, s);
    } else if (const auto* x = st.as<BlockStmt>()) {
      block(*x->block, s);
    }
  }

  // ---- expressions

  struct Val {
    std::string type;  // "" when unknown
    bool denotes_type = false;
  };

  std::optional<std::string> local(const std::string& n) {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (auto f = it->find(n); f != it->end()) return f->second;
    return std::nullopt;
  }

  void field_use(const Decl& owner, const MemberDecl& f, Mode access, const Location& loc) {
    if (!owner.library) return;
    const SymbolKey k{owner.fqn + "." + f.name, std::nullopt};
    if (access != Mode::Write) emit(k, UseKind::FieldRead, loc);
    if (access != Mode::Read) emit(k, UseKind::FieldWrite, loc);
  }

  void value_with_target(const Expr& e, const std::string& target, const Scope& s) {
    if (const auto* l = e.as<LambdaExpr>())
      lambda(e, *l, target, s);
    else
      value(e, s);
  }

  void lambda(const Expr& e, const LambdaExpr& l, const std::string& target, const Scope& s) {
    std::optional<Method> fm = is_library(target) ? functional(target) : std::nullopt;
    if (fm) emit_pair(type_key(target), UseKind::Implementation, method_key(*fm), UseKind::Overriding, e.loc);
    locals_.emplace_back();
    for (std::size_t i = 0; i < l.params.size(); ++i) {
      const auto& p = l.params[i];
      std::string type;
      if (p.type) {
        reference(*p.type, s);
        type = resolve(*p.type, s).name;
      } else if (fm && i < fm->params.size() && !fm->params[i].type_var) {
        type = fm->params[i].name;
      }
      locals_.back()[p.name] = type;
    }
    returns_.emplace_back(std::nullopt);
    if (l.body_expr) value(*l.body_expr, s);
    if (l.body_block) block(*l.body_block, s);
    returns_.pop_back();
    locals_.pop_back();
  }

  bool denotes_known_type(const std::string& n, const Scope& s) {
    return find(simple_type(n, s)) != nullptr;
  }

  Val value(const Expr& e, const Scope& s, Mode access = Mode::Read) {
    if (const auto* x = e.as<LiteralExpr>()) {
      switch (x->kind) {
        case LiteralKind::String: return {"java.lang.String"};
        case LiteralKind::Int: return {"int"};
        case LiteralKind::Long: return {"long"};
        case LiteralKind::Float: return {"float"};
        case LiteralKind::Double: return {"double"};
        case LiteralKind::Char: return {"char"};
        case LiteralKind::Boolean: return {"boolean"};
        case LiteralKind::Null: return {"null"};
      }
    }
    if (const auto* x = e.as<NameExpr>()) {
      if (auto t = local(x->name)) return {*t};
      for (const Decl* d = s.decl; d != nullptr; d = d->outer)
        if (auto f = field(d->fqn, x->name)) {
          field_use(*f->first, *f->second, access, e.loc);
          return {field_type(*f->first, *f->second).name};
        }
      return {simple_type(x->name, s), true};
    }
    if (e.as<ThisExpr>() != nullptr) return {s.decl->fqn};
    if (const auto* x = e.as<FieldAccessExpr>()) {
      Val target = value(*x->target, s);
      if (target.type.empty()) return {};
      if (auto f = field(target.type, x->name)) {
        field_use(*f->first, *f->second, access, e.loc);
        return {field_type(*f->first, *f->second).name};
      }
      if (target.denotes_type) return {target.type + "." + x->name, true};
      return {};
    }
    if (const auto* x = e.as<CallExpr>()) return call(e, *x, s);
    if (const auto* x = e.as<CtorCallExpr>()) {
      if (x->is_super)
        if (auto sc = superclass(*s.decl); sc && is_library(*sc))
          if (auto sig = ctor(*sc, x->args.size()))
            emit({*sc, *sig}, UseKind::ConstructorInvocation, e.loc);
      for (const auto& a : x->args) value(*a, s);
      return {};
    }
    if (const auto* x = e.as<NewExpr>()) return construct(*x, s);
    if (const auto* x = e.as<NewArrayExpr>()) {
      reference(x->element, s);
      for (const auto& d : x->dim_exprs) value(*d, s);
      for (const auto& i : x->init) value(*i, s);
      std::string t = resolve(x->element, s).name;
      for (int i = 0; i < x->dims; ++i) t += "[]";
      return {t};
    }
    if (const auto* x = e.as<AssignExpr>()) {
      Val target = value(*x->target, s, x->op == "=" ? Mode::Write : Mode::ReadWrite);
      value_with_target(*x->value, target.type, s);
      return target;
    }
    if (const auto* x = e.as<BinaryExpr>()) {
      value(*x->lhs, s);
      value(*x->rhs, s);
      return {};
    }
    if (const auto* x = e.as<UnaryExpr>()) {
      const bool step = x->op == "++" || x->op == "--";
      return value(*x->operand, s, step ? Mode::ReadWrite : Mode::Read);
    }
    if (const auto* x = e.as<ConditionalExpr>()) {
      value(*x->cond, s);
      Val t = value(*x->then_expr, s);
      value(*x->else_expr, s);
      return t;
    }
    if (const auto* x = e.as<CastExpr>()) {
      reference(x->type, s);
      value_with_target(*x->operand, resolve(x->type, s).name, s);
      return {resolve(x->type, s).name};
    }
    if (const auto* x = e.as<LambdaExpr>()) {
      lambda(e, *x, "", s);
      return {};
    }
    if (const auto* x = e.as<IndexExpr>()) {
      Val t = value(*x->target, s);
      value(*x->index, s);
      if (t.type.size() > 2 && t.type.ends_with("[]")) return {t.type.substr(0, t.type.size() - 2)};
      return {};
    }
    if (const auto* x = e.as<ClassLiteralExpr>()) {
      reference(x->type, s);
      return {};
    }
    return {};
  }

  Val construct(const NewExpr& x, const Scope& s) {
    const std::string type = resolve(x.type, s).name;
    ref_args(x.type, s);
    if (x.body) {
      if (is_library(type)) {
        if (is_interface(type)) {
          emit(type_key(type), UseKind::Implementation, x.type.loc);
        } else {
          emit(type_key(type), UseKind::Inheritance, x.type.loc);
          if (auto sig = ctor(type, x.args.size()))
            emit({type, *sig}, UseKind::ConstructorInvocation, x.type.loc);
        }
      }
      for (const auto& a : x.args) value(*a, s);
      const Decl* anon = anonymous(*x.body, x.type, s);
      auto saved_locals = locals_;
      auto saved_returns = returns_;
      overriding(*anon);
      for (const auto& m : anon->decl->members) member(*anon, m);
      locals_ = std::move(saved_locals);
      returns_ = std::move(saved_returns);
      return {anon->fqn};
    }
    if (is_library(type) && !is_interface(type))
      if (auto sig = ctor(type, x.args.size()))
        emit_pair(type_key(type), UseKind::Instantiation, {type, *sig}, UseKind::ConstructorInvocation,
                  x.type.loc);
    for (const auto& a : x.args) value(*a, s);
    return {type};
  }

  Val call(const Expr& e, const CallExpr& x, const Scope& s) {
    std::optional<Method> m;
    std::string receiver;
    if (x.target == nullptr) {
      for (const Decl* d = s.decl; d != nullptr && !m; d = d->outer) {
        auto ms = methods_named(d->fqn, x.name);
        if (!ms.empty()) {
          m = by_arity(ms, x.args.size());
          receiver = d->fqn;
          if (!m) break;
        }
      }
      if (!m && receiver.empty()) {
        for (const auto& imp : s.unit->imports) {
          if (!imp.is_static) continue;
          std::string owner;
          if (imp.on_demand)
            owner = imp.qualified();
          else if (imp.name.back() == x.name)
            owner = join(imp.name, imp.name.size() - 1);
          if (owner.empty()) continue;
          if (auto found = by_arity(methods_named(owner, x.name), x.args.size())) {
            m = found;
            receiver = owner;
            break;
          }
        }
      }
    } else {
      Val target = value(*x.target, s);
      if (!target.type.empty()) {
        m = by_arity(methods_named(target.type, x.name), x.args.size());
        receiver = target.type;
      }
    }

    if (m) {
      if (m->decl->modifiers.has(Modifier::Static)) {
        if (m->owner->library) emit(method_key(*m), UseKind::StaticInvocation, e.loc);
      } else {
        if (m->owner->library) emit(method_key(*m), UseKind::MethodInvocation, e.loc);
        for (const auto& sname : closure(receiver)) {
          const Decl* sd = find(sname);
          if (sd == nullptr || !sd->library) continue;
          for (const auto& bm : sd->decl->members) {
            if (bm.kind != MemberKind::Method || bm.name != x.name || &bm == m->decl ||
                bm.modifiers.has(Modifier::Static))
              continue;
            const Method base = method_of(*sd, bm);
            if (base.sig == m->sig || overrides(*m, base)) {
              const SymbolKey k = method_key(base);
              if (sum_.allows(k, UseKind::MethodInvocation)) out_.insert({k, UseKind::MethodInvocation, e.loc});
            }
          }
        }
      }
    }

    for (std::size_t i = 0; i < x.args.size(); ++i) {
      std::string target;
      if (m && !m->params[i].type_var) target = m->params[i].name;
      value_with_target(*x.args[i], target, s);
    }
    if (!m) return {};
    return {return_type(*m).name};
  }
};

}  // namespace

std::set<UseTriple> oracle_footprint(const std::vector<std::shared_ptr<const SourceUnit>>& library,
                                     const std::vector<std::shared_ptr<const SourceUnit>>& clients,
                                     const UsageModel& sum) {
  return Oracle(library, clients, sum).run();
}

}  // namespace ucov::testing
