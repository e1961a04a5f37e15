#include "ucov/binder.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ucov/errors.hpp"

namespace ucov {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kBoxes{{
    {"boolean", "java.lang.Boolean"},
    {"byte", "java.lang.Byte"},
    {"char", "java.lang.Character"},
    {"short", "java.lang.Short"},
    {"int", "java.lang.Integer"},
    {"long", "java.lang.Long"},
    {"float", "java.lang.Float"},
    {"double", "java.lang.Double"},
}};

std::optional<std::string> boxed(std::string_view primitive) {
  for (const auto& [p, box] : kBoxes)
    if (p == primitive) return std::string(box);
  return std::nullopt;
}

std::optional<std::string> unboxed(std::string_view type) {
  for (const auto& [p, box] : kBoxes)
    if (box == type) return std::string(p);
  return std::nullopt;
}

bool primitive_widening(std::string_view from, std::string_view to) {
  if (from == to) return true;
  static const std::map<std::string_view, std::set<std::string_view>> widening{
      {"byte", {"short", "int", "long", "float", "double"}},
      {"short", {"int", "long", "float", "double"}},
      {"char", {"int", "long", "float", "double"}},
      {"int", {"long", "float", "double"}},
      {"long", {"float", "double"}},
      {"float", {"double"}},
  };
  auto it = widening.find(from);
  return it != widening.end() && it->second.count(to) > 0;
}

bool is_array(std::string_view t) { return t.size() > 2 && t.substr(t.size() - 2) == "[]"; }
std::string_view element_of(std::string_view t) { return t.substr(0, t.size() - 2); }

bool reference_assignable(const SymbolTable& table, std::string_view from, std::string_view to) {
  if (from == to || to == kObjectType) return true;
  if (is_array(from)) {
    if (!is_array(to)) return false;
    std::string_view fe = element_of(from), te = element_of(to);
    if (is_primitive_name(fe) || is_primitive_name(te)) return fe == te;
    return reference_assignable(table, fe, te);
  }
  if (is_array(to)) return false;
  if (table.find_type(from) == nullptr) return true;
  return table.is_subtype(from, to) || table.has_external_ancestor(from);
}

std::vector<const MemberInfo*> method_candidates(const SymbolTable& table, std::string_view receiver,
                                                 std::string_view name) {
  auto out = table.members_named(receiver, name, MemberKind::Method);
  const TypeInfo* t = table.find_type(receiver);
  if (t != nullptr && t->is_interface()) {
    std::set<std::string> seen;
    for (const auto* m : out) seen.insert(m->signature);
    for (const auto* m : table.members_named(kObjectType, name, MemberKind::Method))
      if (seen.insert(m->signature).second) out.push_back(m);
  }
  return out;
}

bool less_member(const MemberInfo* a, const MemberInfo* b) {
  return std::tie(a->signature, a->declaring) < std::tie(b->signature, b->declaring);
}

MethodResolution pick(const std::vector<const MemberInfo*>& v) {
  if (v.size() == 1) return {ResolutionStatus::Resolved, v.front()};
  return {ResolutionStatus::Ambiguous, *std::min_element(v.begin(), v.end(), less_member)};
}

bool more_specific(const SymbolTable& table, const MemberInfo& a, const MemberInfo& b) {
  for (std::size_t i = 0; i < a.param_types.size(); ++i)
    if (!is_assignable(table, a.param_types[i], b.param_types[i], false)) return false;
  return true;
}

MethodResolution most_specific(const SymbolTable& table, const std::vector<const MemberInfo*>& v) {
  std::vector<const MemberInfo*> best;
  for (const auto* m : v) {
    bool dominates = std::all_of(v.begin(), v.end(), [&](const MemberInfo* o) {
      return o == m || more_specific(table, *m, *o);
    });
    if (dominates) best.push_back(m);
  }
  return pick(best.empty() ? v : best);
}

bool is_object_method(std::string_view signature) {
  return signature == "equals(java.lang.Object)" || signature == "hashCode()" ||
         signature == "toString()";
}

StaticType static_of(const ResolvedType& r) {
  if (r.type_variable && r.dims == 0 && r.name == kObjectType) return std::nullopt;
  return r.erased();
}

bool is_numeric(const StaticType& t) {
  return t && is_primitive_name(*t) && *t != "boolean";
}

StaticType unbox_if_wrapper(const StaticType& t) {
  if (!t) return t;
  if (auto p = unboxed(*t)) return p;
  return t;
}

StaticType unary_promote(const StaticType& t) {
  StaticType u = unbox_if_wrapper(t);
  if (!is_numeric(u)) return std::nullopt;
  if (*u == "byte" || *u == "short" || *u == "char") return std::string("int");
  return u;
}

StaticType binary_promote(const StaticType& a, const StaticType& b) {
  StaticType x = unbox_if_wrapper(a), y = unbox_if_wrapper(b);
  if (!is_numeric(x) || !is_numeric(y)) return std::nullopt;
  for (std::string_view wide : {"double", "float", "long"})
    if (*x == wide || *y == wide) return std::string(wide);
  return std::string("int");
}

StaticType binary_type(std::string_view op, const StaticType& l, const StaticType& r) {
  static const std::set<std::string_view> boolean_ops{"==", "!=", "<", ">", "<=", ">=", "&&", "||"};
  if (boolean_ops.count(op) > 0) return std::string("boolean");
  if (op == "+" && ((l && *l == kStringType) || (r && *r == kStringType)))
    return std::string(kStringType);
  if (op == "&" || op == "|" || op == "^") {
    if (unbox_if_wrapper(l) == "boolean" && unbox_if_wrapper(r) == "boolean")
      return std::string("boolean");
  }
  if (op == "<<" || op == ">>" || op == ">>>") return unary_promote(l);
  return binary_promote(l, r);
}

std::string join(const std::vector<std::string>& parts, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) out += (i > 0 ? "." : "") + parts[i];
  return out;
}

}  // namespace

std::string_view diagnostic_kind_name(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::Unresolved: return "Unresolved";
    case DiagnosticKind::Ambiguous: return "Ambiguous";
    case DiagnosticKind::IllegalUse: return "IllegalUse";
    case DiagnosticKind::ParseFailure: return "ParseFailure";
  }
  return "Unresolved";
}

std::optional<DiagnosticKind> diagnostic_kind_from_name(std::string_view name) {
  for (auto k : {DiagnosticKind::Unresolved, DiagnosticKind::Ambiguous, DiagnosticKind::IllegalUse,
                 DiagnosticKind::ParseFailure})
    if (diagnostic_kind_name(k) == name) return k;
  return std::nullopt;
}

bool is_assignable(const SymbolTable& table, const StaticType& from, std::string_view to,
                   bool allow_boxing) {
  if (!from) return true;
  const std::string& f = *from;
  if (f == to) return true;
  const bool to_prim = is_primitive_name(to);
  if (f == "null") return !to_prim;
  const bool from_prim = is_primitive_name(f);
  if (from_prim && to_prim) return primitive_widening(f, to);
  if (from_prim) {
    auto box = boxed(f);
    return allow_boxing && box && reference_assignable(table, *box, to);
  }
  if (to_prim) {
    auto p = unboxed(f);
    return allow_boxing && p && primitive_widening(*p, to);
  }
  return reference_assignable(table, f, to);
}

MethodResolution select_overload(const SymbolTable& table,
                                 const std::vector<const MemberInfo*>& candidates,
                                 const std::vector<StaticType>& args) {
  std::vector<const MemberInfo*> arity;
  for (const auto* m : candidates)
    if (m->param_types.size() == args.size()) arity.push_back(m);
  if (arity.empty()) return {};
  for (bool boxing : {false, true}) {
    std::vector<const MemberInfo*> applicable;
    for (const auto* m : arity) {
      bool ok = true;
      for (std::size_t i = 0; i < args.size() && ok; ++i)
        ok = is_assignable(table, args[i], m->param_types[i], boxing);
      if (ok) applicable.push_back(m);
    }
    if (!applicable.empty()) return most_specific(table, applicable);
  }
  return pick(arity);
}

MethodResolution resolve_method(const SymbolTable& table, std::string_view receiver,
                                std::string_view name, const std::vector<StaticType>& args) {
  return select_overload(table, method_candidates(table, receiver, name), args);
}

MethodResolution resolve_constructor(const SymbolTable& table, std::string_view type,
                                     const std::vector<StaticType>& args) {
  const TypeInfo* t = table.find_type(type);
  if (t == nullptr) return {};
  return select_overload(table, t->constructors(), args);
}

const MemberInfo* functional_method(const SymbolTable& table, std::string_view interface_fqn) {
  const TypeInfo* root = table.find_type(interface_fqn);
  if (root == nullptr || !root->is_interface()) return nullptr;
  std::vector<std::string> chain{root->fqn};
  for (auto& s : table.supertype_closure(interface_fqn)) chain.push_back(std::move(s));
  std::set<std::string> seen;
  std::vector<const MemberInfo*> abstract;
  for (const auto& fqn : chain) {
    const TypeInfo* t = table.find_type(fqn);
    if (t == nullptr) continue;
    for (const auto& m : t->members) {
      if (m.kind != MemberKind::Method || m.is_static()) continue;
      if (!seen.insert(m.signature).second) continue;
      if (m.modifiers.has(Modifier::Abstract) && !is_object_method(m.signature))
        abstract.push_back(&m);
    }
  }
  return abstract.size() == 1 ? abstract.front() : nullptr;
}

StaticType value_type(const MemberInfo& member) {
  if (member.value_is_type_var && member.value_type == kObjectType) return std::nullopt;
  return member.value_type;
}

const ExprBinding* BoundUnit::binding(const Expr& e) const {
  auto it = bindings.find(&e);
  return it == bindings.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------

namespace {

class Binder {
 public:
  Binder(const SymbolTable& table, BoundUnit& out) : t_(table), out_(out) {}

  void bind_declared(const TypeInfo& info) {
    out_.types.push_back(&info);
    Frame saved = std::move(frame_);
    std::vector<Scope> saved_scopes = std::move(scopes_);
    scopes_.clear();
    frame_ = Frame{&info, t_.context_for(info), std::nullopt};
    header(info);
    members(info);
    for (const auto& n : info.nested)
      if (const TypeInfo* nt = t_.find_type(n)) bind_declared(*nt);
    frame_ = std::move(saved);
    scopes_ = std::move(saved_scopes);
  }

  StaticType bind_in(const Expr& e, const Environment& env) {
    frame_.self = env.self;
    frame_.ctx = env.context;
    if (frame_.ctx.enclosing.empty() && env.self != nullptr) frame_.ctx = t_.context_for(*env.self);
    scopes_.assign(1, Scope(env.locals.begin(), env.locals.end()));
    return expr(e);
  }

 private:
  struct Frame {
    const TypeInfo* self = nullptr;
    TypeContext ctx;
    StaticType return_type;
  };
  using Scope = std::map<std::string, StaticType, std::less<>>;

  struct Target {
    enum class Kind { Value, Type, Package } kind = Kind::Value;
    StaticType value;
    const TypeInfo* type = nullptr;  // Type: the known type, null if external
    std::vector<std::string> segments;  // Package: the name so far
  };

  const SymbolTable& t_;
  BoundUnit& out_;
  Frame frame_;
  std::vector<Scope> scopes_;

  // -- helpers ----------------------------------------------------------------

  void diagnose(DiagnosticKind kind, const Location& loc, std::string message) {
    out_.diagnostics.push_back({loc, kind, std::move(message)});
  }

  void record(const Expr& e, ExprBinding b) {
    out_.exprs.push_back(&e);
    out_.bindings[&e] = std::move(b);
  }

  void declare(const std::string& name, StaticType type) {
    if (scopes_.empty()) scopes_.emplace_back();
    scopes_.back()[name] = std::move(type);
  }

  const StaticType* local(std::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  // Enclosing types whose hierarchy is only partially known make failed
  // lookups inconclusive.
  bool open_scope() const {
    return std::any_of(frame_.ctx.enclosing.begin(), frame_.ctx.enclosing.end(),
                       [&](const TypeInfo* e) { return t_.has_external_ancestor(e->fqn); });
  }

  struct StaticImport {
    std::string owner;
    bool known = false;
  };

  std::vector<StaticImport> static_imports_for(std::string_view name) const {
    std::vector<StaticImport> out;
    if (out_.unit == nullptr) return out;
    for (const auto& imp : out_.unit->imports) {
      if (!imp.is_static) continue;
      std::string owner;
      if (imp.on_demand) {
        owner = imp.qualified();
      } else if (imp.name.size() > 1 && imp.name.back() == name) {
        owner = join(imp.name, imp.name.size() - 1);
      } else {
        continue;
      }
      out.push_back({owner, t_.find_type(owner) != nullptr});
    }
    return out;
  }

  struct FieldHit {
    const MemberInfo* field = nullptr;
    std::string receiver;
    bool by_import = false;
  };

  std::optional<FieldHit> field_by_name(std::string_view name) const {
    for (const TypeInfo* e : frame_.ctx.enclosing)
      if (const MemberInfo* f = t_.find_field(e->fqn, name)) return FieldHit{f, e->fqn, false};
    for (const auto& imp : static_imports_for(name)) {
      if (!imp.known) continue;
      if (const MemberInfo* f = t_.find_field(imp.owner, name))
        if (f->is_static()) return FieldHit{f, imp.owner, true};
    }
    return std::nullopt;
  }

  ResolvedType site(const TypeRef& ref, TypeRefRole role, const Expr* new_expr = nullptr) {
    if (ref.wildcard != TypeRef::Wildcard::None) {
      for (const auto& b : ref.bound) site(b, TypeRefRole::Reference);
      return t_.resolve(ref, frame_.ctx);
    }
    ResolvedType r = t_.resolve(ref, frame_.ctx);
    if (!r.primitive && !r.type_variable) out_.type_refs.push_back({&ref, r, role, new_expr});
    for (const auto& a : ref.args) site(a, TypeRefRole::Reference);
    return r;
  }

  // -- declarations -----------------------------------------------------------

  void header(const TypeInfo& info) {
    const TypeDecl& d = *info.decl;
    for (const auto& tp : d.type_params)
      for (const auto& b : tp.bounds) site(b, TypeRefRole::Reference);
    if (d.kind == TypeKind::Class) {
      for (const auto& r : d.extends_refs) site(r, TypeRefRole::Extends);
      for (const auto& r : d.implements_refs) site(r, TypeRefRole::Implements);
    } else {
      for (const auto& r : d.extends_refs) site(r, TypeRefRole::InterfaceExtends);
    }
    for (const auto& r : d.permits_refs) site(r, TypeRefRole::Reference);
  }

  void members(const TypeInfo& info) {
    for (const auto& m : info.decl->members) {
      if (m.kind == MemberKind::Field) {
        StaticType ft = static_of(site(*m.field_type, TypeRefRole::Reference));
        if (m.initializer) expr(*m.initializer, ft);
        continue;
      }
      const TypeContext saved_ctx = frame_.ctx;
      const StaticType saved_return = frame_.return_type;
      for (const auto& tp : m.type_params) {
        std::string erasure = tp.bounds.empty()
                                  ? std::string(kObjectType)
                                  : t_.resolve(tp.bounds.front(), frame_.ctx).erased();
        frame_.ctx.type_vars.insert(frame_.ctx.type_vars.begin(), {tp.name, erasure});
      }
      for (const auto& tp : m.type_params)
        for (const auto& b : tp.bounds) site(b, TypeRefRole::Reference);
      frame_.return_type = m.return_type ? static_of(site(*m.return_type, TypeRefRole::Reference))
                                         : StaticType("void");
      scopes_.emplace_back();
      for (const auto& p : m.params) declare(p.name, static_of(site(p.type, TypeRefRole::Reference)));
      for (const auto& th : m.throws_refs) site(th, TypeRefRole::Reference);
      if (m.kind == MemberKind::Constructor && m.body) implicit_super(info, m);
      if (m.body) block(*m.body);
      scopes_.pop_back();
      frame_.ctx = saved_ctx;
      frame_.return_type = saved_return;
    }
  }

  void implicit_super(const TypeInfo& info, const MemberDecl& ctor) {
    if (info.anonymous || !info.superclass) return;
    const auto& stmts = ctor.body->stmts;
    if (!stmts.empty()) {
      if (const auto* es = stmts.front().as<ExprStmt>(); es && es->expr && es->expr->as<CtorCallExpr>())
        return;
    }
    ImplicitSuperCall call{ctor.location, *info.superclass,
                           resolve_constructor(t_, *info.superclass, {})};
    if (call.target.status == ResolutionStatus::Unresolved && t_.find_type(*info.superclass) != nullptr)
      diagnose(DiagnosticKind::Unresolved, ctor.location,
               "no zero-argument constructor in " + *info.superclass);
    out_.implicit_super.push_back(std::move(call));
  }

  void bind_anonymous(const TypeInfo& anon) {
    out_.types.push_back(&anon);
    Frame saved = frame_;
    TypeContext ctx = t_.context_for(anon);
    ctx.type_vars = saved.ctx.type_vars;
    frame_ = Frame{&anon, std::move(ctx), std::nullopt};
    members(anon);
    for (const auto& n : anon.nested)
      if (const TypeInfo* nt = t_.find_type(n)) bind_declared(*nt);
    frame_ = std::move(saved);
  }

  // -- statements -------------------------------------------------------------

  void block(const Block& b) {
    scopes_.emplace_back();
    for (const auto& s : b.stmts) stmt(s);
    scopes_.pop_back();
  }

  void scoped(const Stmt* s) {
    if (s == nullptr) return;
    scopes_.emplace_back();
    stmt(*s);
    scopes_.pop_back();
  }

  void stmt(const Stmt& s) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, LocalDeclStmt>) {
            StaticType st = static_of(site(n.type, TypeRefRole::Reference));
            if (n.init) expr(*n.init, st);
            declare(n.name, st);
          } else if constexpr (std::is_same_v<T, ExprStmt>) {
            expr(*n.expr);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            expr(*n.cond);
            scoped(n.then_stmt.get());
            scoped(n.else_stmt.get());
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            expr(*n.cond);
            scoped(n.body.get());
          } else if constexpr (std::is_same_v<T, ForStmt>) {
            scopes_.emplace_back();
            for (const auto& i : n.init) stmt(i);
            if (n.cond) expr(*n.cond);
            for (const auto& u : n.update) expr(*u);
            scoped(n.body.get());
            scopes_.pop_back();
          } else if constexpr (std::is_same_v<T, ForEachStmt>) {
            expr(*n.iterable);
            scopes_.emplace_back();
            declare(n.name, static_of(site(n.type, TypeRefRole::Reference)));
            scoped(n.body.get());
            scopes_.pop_back();
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (n.value) expr(*n.value, frame_.return_type);
          } else if constexpr (std::is_same_v<T, ThrowStmt>) {
            expr(*n.value);
          } else if constexpr (std::is_same_v<T, TryStmt>) {
            block(*n.body);
            for (const auto& c : n.catches) {
              scopes_.emplace_back();
              StaticType ct;
              for (const auto& ty : c.types) ct = static_of(site(ty, TypeRefRole::Reference));
              declare(c.name, c.types.size() == 1 ? ct : std::nullopt);
              block(*c.body);
              scopes_.pop_back();
            }
            if (n.finally_block) block(*n.finally_block);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            block(*n.block);
          }
        },
        s.node);
  }

  // -- expressions ------------------------------------------------------------

  StaticType expr(const Expr& e, const StaticType& expected = std::nullopt,
                  Access access = Access::Read) {
    if (e.as<NameExpr>() != nullptr || e.as<FieldAccessExpr>() != nullptr) {
      Target tg = target(e, access, true);
      return tg.kind == Target::Kind::Value ? tg.value : std::nullopt;
    }
    ExprBinding b;
    b.access = access;
    StaticType type = std::visit([&](const auto& n) { return node(e, n, b, expected); }, e.node);
    b.type = type;
    record(e, std::move(b));
    return type;
  }

  // Classifies a name or qualifier as a value, a type, or a package prefix,
  // recording the binding of `e` exactly once.
  Target target(const Expr& e, Access access = Access::Read, bool value_context = false) {
    if (const auto* n = e.as<NameExpr>()) return name_target(e, *n, access, value_context);
    if (const auto* f = e.as<FieldAccessExpr>()) return field_target(e, *f, access);
    Target tg;
    tg.value = expr(e);
    return tg;
  }

  Target name_target(const Expr& e, const NameExpr& n, Access access, bool value_context) {
    ExprBinding b;
    b.access = access;
    Target tg;
    if (const StaticType* lt = local(n.name)) {
      tg.value = *lt;
    } else if (auto hit = field_by_name(n.name)) {
      b.member = hit->field;
      b.receiver = hit->receiver;
      b.qualified_by_type = hit->by_import;
      tg.value = value_type(*hit->field);
    } else if (auto r = t_.lookup_type_name({n.name}, frame_.ctx); r && !r->type_variable) {
      tg.kind = Target::Kind::Type;
      tg.type = r->known ? t_.find_type(r->name) : nullptr;
      b.denotes_type = tg.type;
    } else {
      tg.kind = Target::Kind::Package;
      tg.segments = {n.name};
      if (value_context && !open_scope() && static_imports_for(n.name).empty())
        diagnose(DiagnosticKind::Unresolved, e.loc, "cannot resolve name " + n.name);
    }
    b.type = tg.value;
    record(e, std::move(b));
    return tg;
  }

  Target field_target(const Expr& e, const FieldAccessExpr& f, Access access) {
    Target inner = target(*f.target);
    ExprBinding b;
    b.access = access;
    b.super_access = f.target->as<SuperExpr>() != nullptr;
    Target tg;
    switch (inner.kind) {
      case Target::Kind::Package: {
        std::vector<std::string> segs = inner.segments;
        segs.push_back(f.name);
        std::string joined = join(segs, segs.size());
        if (const TypeInfo* t = t_.find_type(joined)) {
          tg.kind = Target::Kind::Type;
          tg.type = t;
          b.denotes_type = t;
        } else {
          tg.kind = Target::Kind::Package;
          tg.segments = std::move(segs);
        }
        break;
      }
      case Target::Kind::Type: {
        if (inner.type == nullptr) break;
        if (const MemberInfo* field = t_.find_field(inner.type->fqn, f.name)) {
          b.member = field;
          b.receiver = inner.type->fqn;
          b.qualified_by_type = true;
          tg.value = value_type(*field);
        } else if (auto mt = t_.member_type(inner.type->fqn, f.name)) {
          tg.kind = Target::Kind::Type;
          tg.type = t_.find_type(*mt);
          b.denotes_type = tg.type;
        } else if (!t_.has_external_ancestor(inner.type->fqn)) {
          diagnose(DiagnosticKind::Unresolved, e.loc,
                   "no member " + f.name + " in " + inner.type->fqn);
        }
        break;
      }
      case Target::Kind::Value: {
        const StaticType& recv = inner.value;
        if (recv && is_array(*recv) && f.name == "length") {
          tg.value = std::string("int");
        } else if (recv && t_.find_type(*recv) != nullptr) {
          if (const MemberInfo* field = t_.find_field(*recv, f.name)) {
            b.member = field;
            b.receiver = *recv;
            tg.value = value_type(*field);
          } else if (!t_.has_external_ancestor(*recv)) {
            diagnose(DiagnosticKind::Unresolved, e.loc, "no field " + f.name + " in " + *recv);
          }
        }
        break;
      }
    }
    b.type = tg.value;
    record(e, std::move(b));
    return tg;
  }

  std::vector<StaticType> arg_types(const std::vector<ExprPtr>& args) {
    std::vector<StaticType> out;
    for (const auto& a : args) out.push_back(a->as<LambdaExpr>() ? std::nullopt : expr(*a));
    return out;
  }

  // Lambda arguments are typed after overload resolution picks their target.
  void bind_lambda_args(const std::vector<ExprPtr>& args, const MemberInfo* callee) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i]->as<LambdaExpr>() == nullptr) continue;
      StaticType expected;
      if (callee != nullptr && i < callee->param_types.size() &&
          !(callee->param_is_type_var[i] && callee->param_types[i] == kObjectType))
        expected = callee->param_types[i];
      expr(*args[i], expected);
    }
  }

  void report(const MethodResolution& r, const Location& loc, const std::string& what,
              bool conclusive) {
    if (r.status == ResolutionStatus::Ambiguous)
      diagnose(DiagnosticKind::Ambiguous, loc,
               "ambiguous " + what + ", chose " + r.member->declaring + "." + r.member->signature);
    else if (r.status == ResolutionStatus::Unresolved && conclusive)
      diagnose(DiagnosticKind::Unresolved, loc, "cannot resolve " + what);
  }

  StaticType node(const Expr&, const LiteralExpr& n, ExprBinding&, const StaticType&) {
    switch (n.kind) {
      case LiteralKind::Int: return std::string("int");
      case LiteralKind::Long: return std::string("long");
      case LiteralKind::Float: return std::string("float");
      case LiteralKind::Double: return std::string("double");
      case LiteralKind::Char: return std::string("char");
      case LiteralKind::String: return std::string(kStringType);
      case LiteralKind::Boolean: return std::string("boolean");
      case LiteralKind::Null: return std::string("null");
    }
    return std::nullopt;
  }

  StaticType node(const Expr&, const NameExpr&, ExprBinding&, const StaticType&) { return {}; }
  StaticType node(const Expr&, const FieldAccessExpr&, ExprBinding&, const StaticType&) { return {}; }

  StaticType node(const Expr&, const ThisExpr&, ExprBinding&, const StaticType&) {
    if (frame_.self == nullptr) return std::nullopt;
    return frame_.self->fqn;
  }

  StaticType node(const Expr&, const SuperExpr&, ExprBinding& b, const StaticType&) {
    b.super_access = true;
    if (frame_.self == nullptr || !frame_.self->superclass) return std::nullopt;
    return *frame_.self->superclass;
  }

  StaticType node(const Expr& e, const CallExpr& c, ExprBinding& b, const StaticType&) {
    std::string receiver;
    std::vector<const MemberInfo*> candidates;
    bool conclusive = true;
    if (!c.target) {
      for (const TypeInfo* enc : frame_.ctx.enclosing) {
        candidates = method_candidates(t_, enc->fqn, c.name);
        if (!candidates.empty()) {
          receiver = enc->fqn;
          break;
        }
      }
      if (candidates.empty()) {
        for (const auto& imp : static_imports_for(c.name)) {
          if (!imp.known) {
            conclusive = false;
            continue;
          }
          candidates = method_candidates(t_, imp.owner, c.name);
          if (!candidates.empty()) {
            receiver = imp.owner;
            b.qualified_by_type = true;
            break;
          }
        }
      }
      conclusive = conclusive && !open_scope();
    } else if (c.target->as<SuperExpr>() != nullptr) {
      StaticType st = expr(*c.target);
      b.super_access = true;
      if (st && t_.find_type(*st) != nullptr) receiver = *st;
      conclusive = !receiver.empty() && !t_.has_external_ancestor(receiver);
    } else {
      Target tg = target(*c.target);
      if (tg.kind == Target::Kind::Type && tg.type != nullptr) {
        receiver = tg.type->fqn;
        b.qualified_by_type = true;
      } else if (tg.kind == Target::Kind::Value && tg.value && t_.find_type(*tg.value) != nullptr) {
        receiver = *tg.value;
      }
      conclusive = !receiver.empty() && !t_.has_external_ancestor(receiver);
    }
    std::vector<StaticType> args = arg_types(c.args);
    if (!receiver.empty() && candidates.empty()) candidates = method_candidates(t_, receiver, c.name);
    MethodResolution r = select_overload(t_, candidates, args);
    report(r, e.loc, "method " + c.name + (receiver.empty() ? "" : " in " + receiver), conclusive);
    b.member = r.member;
    b.receiver = receiver;
    b.status = r.status;
    bind_lambda_args(c.args, r.member);
    return r.member != nullptr ? value_type(*r.member) : std::nullopt;
  }

  StaticType node(const Expr& e, const CtorCallExpr& c, ExprBinding& b, const StaticType&) {
    b.super_access = c.is_super;
    std::optional<std::string> owner;
    if (frame_.self != nullptr) owner = c.is_super ? frame_.self->superclass : frame_.self->fqn;
    std::vector<StaticType> args = arg_types(c.args);
    if (owner && t_.find_type(*owner) != nullptr) {
      MethodResolution r = resolve_constructor(t_, *owner, args);
      report(r, e.loc, "constructor of " + *owner, true);
      b.member = r.member;
      b.receiver = *owner;
      b.status = r.status;
    }
    bind_lambda_args(c.args, b.member);
    return std::string("void");
  }

  StaticType node(const Expr& e, const NewExpr& n, ExprBinding& b, const StaticType&) {
    ResolvedType r = site(n.type, n.body ? TypeRefRole::AnonymousBase : TypeRefRole::Instantiated, &e);
    std::vector<StaticType> args = arg_types(n.args);
    const TypeInfo* created = r.known && !r.primitive ? t_.find_type(r.name) : nullptr;
    if (created != nullptr && !created->is_interface()) {
      MethodResolution res = select_overload(t_, created->constructors(), args);
      report(res, e.loc, "constructor of " + created->fqn, true);
      b.member = res.member;
      b.receiver = created->fqn;
      b.status = res.status;
    }
    bind_lambda_args(n.args, b.member);
    if (n.body) {
      b.anonymous = t_.anonymous_type(*n.body);
      if (b.anonymous != nullptr) {
        bind_anonymous(*b.anonymous);
        return b.anonymous->fqn;
      }
    }
    return static_of(r);
  }

  StaticType node(const Expr&, const NewArrayExpr& n, ExprBinding&, const StaticType&) {
    ResolvedType r = site(n.element, TypeRefRole::Reference);
    for (const auto& d : n.dim_exprs) expr(*d);
    std::string type = r.erased();
    std::string element = type;
    for (int i = 0; i < n.dims; ++i) type += "[]";
    for (int i = 1; i < n.dims; ++i) element += "[]";
    for (const auto& i : n.init) expr(*i, element);
    return type;
  }

  StaticType node(const Expr&, const AssignExpr& n, ExprBinding&, const StaticType&) {
    StaticType tt = expr(*n.target, std::nullopt, n.op == "=" ? Access::Write : Access::ReadWrite);
    expr(*n.value, tt);
    return tt;
  }

  StaticType node(const Expr&, const BinaryExpr& n, ExprBinding&, const StaticType&) {
    StaticType l = expr(*n.lhs);
    StaticType r = expr(*n.rhs);
    return binary_type(n.op, l, r);
  }

  StaticType node(const Expr&, const UnaryExpr& n, ExprBinding&, const StaticType&) {
    if (n.op == "++" || n.op == "--") return expr(*n.operand, std::nullopt, Access::ReadWrite);
    StaticType t = expr(*n.operand);
    if (n.op == "!") return std::string("boolean");
    return unary_promote(t);
  }

  StaticType node(const Expr&, const ConditionalExpr& n, ExprBinding&, const StaticType& expected) {
    expr(*n.cond);
    StaticType a = expr(*n.then_expr, expected);
    StaticType c = expr(*n.else_expr, expected);
    if (a == c) return a;
    if (a == "null") return c;
    if (c == "null") return a;
    if (StaticType p = binary_promote(a, c)) return p;
    return std::nullopt;
  }

  StaticType node(const Expr&, const CastExpr& n, ExprBinding&, const StaticType&) {
    StaticType st = static_of(site(n.type, TypeRefRole::Reference));
    expr(*n.operand, st);
    return st;
  }

  StaticType node(const Expr&, const LambdaExpr& n, ExprBinding& b, const StaticType& expected) {
    const MemberInfo* fm = nullptr;
    if (expected) {
      if (const TypeInfo* t = t_.find_type(*expected); t != nullptr && t->is_interface()) {
        fm = functional_method(t_, t->fqn);
        if (fm != nullptr) {
          b.lambda_interface = t;
          b.lambda_method = fm;
        }
      }
    }
    scopes_.emplace_back();
    for (std::size_t i = 0; i < n.params.size(); ++i) {
      const auto& p = n.params[i];
      StaticType pt;
      if (p.type) {
        pt = static_of(site(*p.type, TypeRefRole::Reference));
      } else if (fm != nullptr && i < fm->param_types.size() &&
                 !(fm->param_is_type_var[i] && fm->param_types[i] == kObjectType)) {
        pt = fm->param_types[i];
      }
      declare(p.name, pt);
    }
    const StaticType saved_return = frame_.return_type;
    frame_.return_type = fm != nullptr ? value_type(*fm) : std::nullopt;
    if (n.body_expr) expr(*n.body_expr, frame_.return_type);
    if (n.body_block) block(*n.body_block);
    frame_.return_type = saved_return;
    scopes_.pop_back();
    return expected;
  }

  StaticType node(const Expr&, const IndexExpr& n, ExprBinding&, const StaticType&) {
    StaticType t = expr(*n.target);
    expr(*n.index);
    if (t && is_array(*t)) return std::string(element_of(*t));
    return std::nullopt;
  }

  StaticType node(const Expr&, const ClassLiteralExpr& n, ExprBinding&, const StaticType&) {
    site(n.type, TypeRefRole::Reference);
    return std::string("java.lang.Class");
  }
};

}  // namespace

StaticType static_type_of(const Expr& expr, const Environment& env, const SymbolTable& table) {
  BoundUnit scratch;
  scratch.unit = env.context.unit;
  Binder binder(table, scratch);
  return binder.bind_in(expr, env);
}

BoundUnit bind_unit(const SourceUnit& unit, const SymbolTable& table) {
  BoundUnit out;
  out.unit = &unit;
  Binder binder(table, out);
  for (const auto& decl : unit.types) {
    const std::string fqn =
        unit.package_name.empty() ? decl.simple_name : unit.package_name + "." + decl.simple_name;
    const TypeInfo* info = table.find_type(fqn);
    if (info == nullptr || info->decl != &decl)
      throw Error("unit " + unit.path + " is not part of the symbol table");
    binder.bind_declared(*info);
  }
  return out;
}

}  // namespace ucov
