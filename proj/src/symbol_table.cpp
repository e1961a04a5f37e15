#include "ucov/symbol_table.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

#include "ucov/errors.hpp"

namespace ucov {

std::string ResolvedType::erased() const {
  std::string out = name;
  for (int i = 0; i < dims; ++i) out += "[]";
  return out;
}

const MemberInfo* TypeInfo::find_member(std::string_view signature) const {
  for (const auto& m : members)
    if (m.kind != MemberKind::Field && m.signature == signature) return &m;
  return nullptr;
}

const MemberInfo* TypeInfo::find_field(std::string_view name) const {
  for (const auto& m : members)
    if (m.kind == MemberKind::Field && m.name == name) return &m;
  return nullptr;
}

std::vector<const MemberInfo*> TypeInfo::constructors() const {
  std::vector<const MemberInfo*> out;
  for (const auto& m : members)
    if (m.kind == MemberKind::Constructor) out.push_back(&m);
  return out;
}

// ---------------------------------------------------------------------------
// Queries

const TypeInfo* SymbolTable::find_type(std::string_view fqn) const {
  auto it = types_.find(fqn);
  return it == types_.end() ? nullptr : it->second.get();
}

std::vector<std::string> SymbolTable::supertype_closure(std::string_view fqn) const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen{std::string(fqn)};
  std::deque<std::string> queue{std::string(fqn)};
  while (!queue.empty()) {
    const TypeInfo* t = find_type(queue.front());
    queue.pop_front();
    if (t == nullptr) continue;
    for (const auto& s : t->supertypes) {
      if (!seen.insert(s.fqn).second) continue;
      out.push_back(s.fqn);
      queue.push_back(s.fqn);
    }
  }
  return out;
}

bool SymbolTable::is_subtype(std::string_view sub, std::string_view super) const {
  if (sub == super) return true;
  auto closure = supertype_closure(sub);
  return std::find(closure.begin(), closure.end(), super) != closure.end();
}

bool SymbolTable::has_external_ancestor(std::string_view fqn) const {
  if (find_type(fqn) == nullptr) return true;
  for (const auto& s : supertype_closure(fqn))
    if (find_type(s) == nullptr) return true;
  return false;
}

std::optional<std::string> SymbolTable::member_type(std::string_view fqn,
                                                    std::string_view name) const {
  std::string direct = std::string(fqn) + "." + std::string(name);
  if (find_type(direct) != nullptr) return direct;
  if (!inherited_lookup_) return std::nullopt;
  for (const auto& s : supertype_closure(fqn)) {
    std::string inherited = s + "." + std::string(name);
    if (find_type(inherited) != nullptr) return inherited;
  }
  return std::nullopt;
}

namespace {

ResolvedType known_type(std::string fqn) {
  ResolvedType r;
  r.name = std::move(fqn);
  r.known = true;
  return r;
}

}  // namespace

std::optional<ResolvedType> SymbolTable::lookup_type_name(const std::vector<std::string>& name,
                                                          const TypeContext& ctx) const {
  if (name.empty()) return std::nullopt;
  const std::string& head = name.front();

  if (name.size() > 1) {
    std::string qualified;
    for (const auto& seg : name) qualified += (qualified.empty() ? "" : ".") + seg;
    if (find_type(qualified) != nullptr) return known_type(qualified);
    auto first = lookup_type_name({head}, ctx);
    if (!first || !first->known || first->type_variable) return std::nullopt;
    std::string cur = first->name;
    for (std::size_t i = 1; i < name.size(); ++i) {
      auto next = member_type(cur, name[i]);
      if (!next) return std::nullopt;
      cur = *next;
    }
    return known_type(cur);
  }

  for (const auto& [var, erasure] : ctx.type_vars) {
    if (var != head) continue;
    ResolvedType r;
    r.name = erasure;
    r.known = find_type(erasure) != nullptr;
    r.type_variable = true;
    return r;
  }
  for (const TypeInfo* e : ctx.enclosing) {
    if (auto m = member_type(e->fqn, head)) return known_type(*m);
    if (!e->anonymous && e->simple_name == head) return known_type(e->fqn);
  }
  if (ctx.unit != nullptr) {
    for (const auto& imp : ctx.unit->imports) {
      if (imp.on_demand || imp.is_static || imp.name.back() != head) continue;
      ResolvedType r;
      r.name = imp.qualified();
      r.known = find_type(r.name) != nullptr;
      return r;
    }
    const std::string local =
        ctx.unit->package_name.empty() ? head : ctx.unit->package_name + "." + head;
    if (find_type(local) != nullptr) return known_type(local);
    for (const auto& imp : ctx.unit->imports) {
      if (!imp.on_demand || imp.is_static) continue;
      std::string candidate = imp.qualified() + "." + head;
      if (find_type(candidate) != nullptr) return known_type(candidate);
    }
  }
  std::string lang = "java.lang." + head;
  if (find_type(lang) != nullptr) return known_type(lang);
  return std::nullopt;
}

ResolvedType SymbolTable::resolve(const TypeRef& ref, const TypeContext& ctx) const {
  if (ref.wildcard != TypeRef::Wildcard::None) {
    if (ref.wildcard == TypeRef::Wildcard::Extends && !ref.bound.empty())
      return resolve(ref.bound.front(), ctx);
    ResolvedType r = known_type(std::string(kObjectType));
    r.known = find_type(kObjectType) != nullptr;
    return r;
  }
  ResolvedType r;
  if (ref.is_primitive()) {
    r.name = ref.name.front();
    r.primitive = true;
    r.known = true;
  } else if (auto found = lookup_type_name(ref.name, ctx)) {
    r = *found;
  } else {
    r.name = ref.qualified();
  }
  r.dims += ref.dims;
  return r;
}

TypeContext SymbolTable::context_for(const TypeInfo& type) const {
  TypeContext ctx;
  ctx.unit = type.unit;
  for (const TypeInfo* t = &type; t != nullptr; t = t->outer.empty() ? nullptr : find_type(t->outer)) {
    ctx.enclosing.push_back(t);
    for (const auto& tp : t->type_params) ctx.type_vars.push_back(tp);
  }
  return ctx;
}

const TypeInfo* SymbolTable::anonymous_type(const TypeDecl& body) const {
  auto it = anonymous_.find(&body);
  return it == anonymous_.end() ? nullptr : find_type(it->second);
}

std::vector<const MemberInfo*> SymbolTable::members_named(std::string_view fqn,
                                                          std::string_view name,
                                                          MemberKind kind) const {
  std::vector<const MemberInfo*> out;
  std::set<std::string, std::less<>> seen;
  auto scan = [&](const TypeInfo* t) {
    if (t == nullptr) return;
    for (const auto& m : t->members) {
      if (m.kind != kind || m.name != name) continue;
      const std::string& key = kind == MemberKind::Field ? m.name : m.signature;
      if (seen.insert(key).second) out.push_back(&m);
    }
  };
  scan(find_type(fqn));
  if (kind == MemberKind::Constructor) return out;
  for (const auto& s : supertype_closure(fqn)) scan(find_type(s));
  return out;
}

const MemberInfo* SymbolTable::find_field(std::string_view fqn, std::string_view name) const {
  auto fields = members_named(fqn, name, MemberKind::Field);
  return fields.empty() ? nullptr : fields.front();
}

// ---------------------------------------------------------------------------
// Construction

namespace {

using AnonCallback = std::function<void(const TypeDecl& body, const TypeRef& base)>;

void walk_block(const Block& b, const AnonCallback& cb);
void walk_stmt(const Stmt& s, const AnonCallback& cb);

// Reports every anonymous class body reachable from `e` without entering
// those bodies.
void walk_expr(const Expr* e, const AnonCallback& cb) {
  if (e == nullptr) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FieldAccessExpr>) {
          walk_expr(n.target.get(), cb);
        } else if constexpr (std::is_same_v<T, CallExpr>) {
          walk_expr(n.target.get(), cb);
          for (const auto& a : n.args) walk_expr(a.get(), cb);
        } else if constexpr (std::is_same_v<T, CtorCallExpr>) {
          for (const auto& a : n.args) walk_expr(a.get(), cb);
        } else if constexpr (std::is_same_v<T, NewExpr>) {
          for (const auto& a : n.args) walk_expr(a.get(), cb);
          if (n.body) cb(*n.body, n.type);
        } else if constexpr (std::is_same_v<T, NewArrayExpr>) {
          for (const auto& d : n.dim_exprs) walk_expr(d.get(), cb);
          for (const auto& i : n.init) walk_expr(i.get(), cb);
        } else if constexpr (std::is_same_v<T, AssignExpr>) {
          walk_expr(n.target.get(), cb);
          walk_expr(n.value.get(), cb);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          walk_expr(n.lhs.get(), cb);
          walk_expr(n.rhs.get(), cb);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          walk_expr(n.operand.get(), cb);
        } else if constexpr (std::is_same_v<T, ConditionalExpr>) {
          walk_expr(n.cond.get(), cb);
          walk_expr(n.then_expr.get(), cb);
          walk_expr(n.else_expr.get(), cb);
        } else if constexpr (std::is_same_v<T, CastExpr>) {
          walk_expr(n.operand.get(), cb);
        } else if constexpr (std::is_same_v<T, LambdaExpr>) {
          walk_expr(n.body_expr.get(), cb);
          if (n.body_block) walk_block(*n.body_block, cb);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          walk_expr(n.target.get(), cb);
          walk_expr(n.index.get(), cb);
        }
      },
      e->node);
}

void walk_stmt(const Stmt& s, const AnonCallback& cb) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, LocalDeclStmt>) {
          walk_expr(n.init.get(), cb);
        } else if constexpr (std::is_same_v<T, ExprStmt> || std::is_same_v<T, ReturnStmt> ||
                             std::is_same_v<T, ThrowStmt>) {
          if constexpr (std::is_same_v<T, ExprStmt>)
            walk_expr(n.expr.get(), cb);
          else
            walk_expr(n.value.get(), cb);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          walk_expr(n.cond.get(), cb);
          if (n.then_stmt) walk_stmt(*n.then_stmt, cb);
          if (n.else_stmt) walk_stmt(*n.else_stmt, cb);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          walk_expr(n.cond.get(), cb);
          if (n.body) walk_stmt(*n.body, cb);
        } else if constexpr (std::is_same_v<T, ForStmt>) {
          for (const auto& i : n.init) walk_stmt(i, cb);
          walk_expr(n.cond.get(), cb);
          for (const auto& u : n.update) walk_expr(u.get(), cb);
          if (n.body) walk_stmt(*n.body, cb);
        } else if constexpr (std::is_same_v<T, ForEachStmt>) {
          walk_expr(n.iterable.get(), cb);
          if (n.body) walk_stmt(*n.body, cb);
        } else if constexpr (std::is_same_v<T, TryStmt>) {
          if (n.body) walk_block(*n.body, cb);
          for (const auto& c : n.catches)
            if (c.body) walk_block(*c.body, cb);
          if (n.finally_block) walk_block(*n.finally_block, cb);
        } else if constexpr (std::is_same_v<T, BlockStmt>) {
          if (n.block) walk_block(*n.block, cb);
        }
      },
      s.node);
}

void walk_block(const Block& b, const AnonCallback& cb) {
  for (const auto& s : b.stmts) walk_stmt(s, cb);
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

class TableBuilder {
 public:
  TableBuilder(SymbolTable& table, Origin origin) : t_(table), origin_(origin) {}

  void add(const std::vector<std::shared_ptr<const SourceUnit>>& units) {
    for (const auto& u : units) {
      t_.units_.push_back(u);
      for (const auto& decl : u->types) register_named(*u, decl, nullptr);
    }
    t_.inherited_lookup_ = false;
    for (TypeInfo* info : added_) resolve_header(*info);
    t_.inherited_lookup_ = true;
    check_cycles();
    for (TypeInfo* info : added_) resolve_members(*info);
  }

 private:
  SymbolTable& t_;
  Origin origin_;
  std::vector<TypeInfo*> added_;
  std::unordered_map<std::string, int> anon_counter_;

  TypeInfo* insert(std::shared_ptr<TypeInfo> info) {
    if (auto existing = t_.types_.find(info->fqn); existing != t_.types_.end()) {
      throw DuplicateSymbol("duplicate type " + info->fqn + " at " + to_string(info->location) +
                            " (first declared at " + to_string(existing->second->location) + ")");
    }
    TypeInfo* raw = info.get();
    t_.types_.emplace(info->fqn, std::move(info));
    added_.push_back(raw);
    return raw;
  }

  void register_named(const SourceUnit& unit, const TypeDecl& decl, TypeInfo* outer) {
    auto info = std::make_shared<TypeInfo>();
    info->simple_name = decl.simple_name;
    info->package_name = unit.package_name;
    if (outer != nullptr) {
      info->fqn = outer->fqn + "." + decl.simple_name;
      info->outer = outer->fqn;
    } else {
      info->fqn = unit.package_name.empty() ? decl.simple_name
                                            : unit.package_name + "." + decl.simple_name;
    }
    fill_common(*info, unit, decl);
    TypeInfo* raw = insert(std::move(info));
    if (outer != nullptr) outer->nested.push_back(raw->fqn);
    register_body(unit, decl, raw);
  }

  void register_anonymous(const SourceUnit& unit, const TypeDecl& body, const TypeRef& base,
                          TypeInfo* outer) {
    auto info = std::make_shared<TypeInfo>();
    info->fqn = outer->fqn + "$" + std::to_string(++anon_counter_[outer->fqn]);
    info->simple_name = "";
    info->package_name = unit.package_name;
    info->outer = outer->fqn;
    info->anonymous = true;
    info->anonymous_base = &base;
    fill_common(*info, unit, body);
    TypeInfo* raw = insert(std::move(info));
    t_.anonymous_.emplace(&body, raw->fqn);
    register_body(unit, body, raw);
  }

  void fill_common(TypeInfo& info, const SourceUnit& unit, const TypeDecl& decl) {
    info.kind = decl.kind;
    info.modifiers = decl.modifiers;
    info.origin = origin_;
    info.decl = &decl;
    info.unit = &unit;
    info.location = decl.location;
  }

  // Nested types first, then anonymous classes in member order.
  void register_body(const SourceUnit& unit, const TypeDecl& decl, TypeInfo* self) {
    for (const auto& n : decl.nested) register_named(unit, n, self);
    AnonCallback cb = [&](const TypeDecl& body, const TypeRef& base) {
      register_anonymous(unit, body, base, self);
    };
    for (const auto& m : decl.members) {
      walk_expr(m.initializer.get(), cb);
      if (m.body) walk_block(*m.body, cb);
    }
  }

  void resolve_header(TypeInfo& info) {
    const TypeDecl& decl = *info.decl;
    {
      TypeContext ctx = t_.context_for(info);
      for (const auto& tp : decl.type_params) {
        std::string erasure =
            tp.bounds.empty() ? std::string(kObjectType) : t_.resolve(tp.bounds.front(), ctx).erased();
        info.type_params.emplace_back(tp.name, erasure);
        ctx.type_vars.insert(ctx.type_vars.begin(), {tp.name, erasure});
      }
    }
    const TypeContext ctx = t_.context_for(info);
    auto add_super = [&](const ResolvedType& r) {
      info.supertypes.push_back({r.name, !r.known});
    };
    const bool has_object = t_.find_type(kObjectType) != nullptr;

    if (info.anonymous) {
      ResolvedType base = t_.resolve(*info.anonymous_base, ctx);
      const TypeInfo* bt = base.known ? t_.find_type(base.name) : nullptr;
      if (bt != nullptr && bt->is_interface()) {
        if (has_object) {
          info.superclass = std::string(kObjectType);
          info.supertypes.push_back({std::string(kObjectType), false});
        }
        add_super(base);
      } else {
        info.superclass = base.name;
        add_super(base);
      }
      return;
    }
    if (info.kind == TypeKind::Class) {
      if (!decl.extends_refs.empty()) {
        ResolvedType r = t_.resolve(decl.extends_refs.front(), ctx);
        info.superclass = r.name;
        add_super(r);
      } else if (has_object && info.fqn != kObjectType) {
        info.superclass = std::string(kObjectType);
        info.supertypes.push_back({std::string(kObjectType), false});
      }
      for (const auto& ref : decl.implements_refs) add_super(t_.resolve(ref, ctx));
    } else {
      for (const auto& ref : decl.extends_refs) add_super(t_.resolve(ref, ctx));
    }
  }

  void check_cycles() const {
    enum class Mark { Active, Done };
    std::unordered_map<std::string, Mark> marks;
    std::vector<std::string> path;
    std::function<void(const std::string&)> visit = [&](const std::string& fqn) {
      auto it = marks.find(fqn);
      if (it != marks.end()) {
        if (it->second == Mark::Done) return;
        auto start = std::find(path.begin(), path.end(), fqn);
        std::vector<std::string> cycle(start, path.end());
        cycle.push_back(fqn);
        throw CyclicHierarchy("cyclic inheritance: " + join(cycle, " -> "));
      }
      const TypeInfo* t = t_.find_type(fqn);
      if (t == nullptr) return;
      marks.emplace(fqn, Mark::Active);
      path.push_back(fqn);
      for (const auto& s : t->supertypes) visit(s.fqn);
      path.pop_back();
      marks[fqn] = Mark::Done;
    };
    for (const TypeInfo* info : added_) visit(info->fqn);
  }

  void resolve_members(TypeInfo& info) {
    const TypeContext ctx = t_.context_for(info);
    std::set<std::string> signatures;
    std::set<std::string> fields;
    std::set<std::string> nested_names;
    for (const auto& n : info.nested) {
      if (const TypeInfo* nt = t_.find_type(n)) nested_names.insert(nt->simple_name);
    }
    auto duplicate = [&](const std::string& what, const Location& loc) {
      throw DuplicateSymbol("duplicate member " + info.fqn + "." + what + " at " + to_string(loc));
    };

    bool has_ctor = false;
    for (const auto& decl : info.decl->members) {
      MemberInfo m;
      m.kind = decl.kind;
      m.name = decl.name;
      m.declaring = info.fqn;
      m.modifiers = decl.modifiers;
      m.decl = &decl;
      m.location = decl.location;
      if (decl.kind == MemberKind::Field) {
        ResolvedType r = t_.resolve(*decl.field_type, ctx);
        m.value_type = r.erased();
        m.value_is_type_var = r.type_variable && r.dims == 0;
        if (!fields.insert(m.name).second || nested_names.count(m.name) > 0)
          duplicate(m.name, m.location);
      } else {
        TypeContext mctx = ctx;
        for (const auto& tp : decl.type_params) {
          std::string erasure = tp.bounds.empty() ? std::string(kObjectType)
                                                  : t_.resolve(tp.bounds.front(), mctx).erased();
          mctx.type_vars.insert(mctx.type_vars.begin(), {tp.name, erasure});
        }
        std::vector<std::string> params;
        for (const auto& p : decl.params) {
          ResolvedType r = t_.resolve(p.type, mctx);
          params.push_back(r.erased());
          m.param_is_type_var.push_back(r.type_variable && r.dims == 0);
        }
        if (decl.kind == MemberKind::Method && decl.return_type) {
          ResolvedType r = t_.resolve(*decl.return_type, mctx);
          m.value_type = r.erased();
          m.value_is_type_var = r.type_variable && r.dims == 0;
        } else {
          m.value_type = "void";
        }
        m.param_types = params;
        m.signature = m.name + "(" + join(params, ",") + ")";
        if (!signatures.insert(m.signature).second) duplicate(m.signature, m.location);
        has_ctor = has_ctor || decl.kind == MemberKind::Constructor;
      }
      info.members.push_back(std::move(m));
    }

    if (info.kind == TypeKind::Class && !info.anonymous && !has_ctor) {
      MemberInfo ctor;
      ctor.kind = MemberKind::Constructor;
      ctor.name = info.simple_name;
      ctor.declaring = info.fqn;
      ctor.signature = info.simple_name + "()";
      ctor.modifiers = ModifierSet{Modifier::Public};
      ctor.value_type = "void";
      ctor.location = info.location;
      info.members.push_back(std::move(ctor));
    }
  }
};

SymbolTable build_symbol_table(std::vector<std::shared_ptr<const SourceUnit>> units) {
  SymbolTable table;
  TableBuilder(table, Origin::Library).add(units);
  return table;
}

SymbolTable overlay_symbol_table(const SymbolTable& base,
                                 std::vector<std::shared_ptr<const SourceUnit>> units,
                                 Origin origin) {
  SymbolTable table = base;
  TableBuilder(table, origin).add(units);
  return table;
}

std::vector<std::string> declared_type_names(const SourceUnit& unit) {
  std::vector<std::string> out;
  std::function<void(const TypeDecl&, const std::string&)> walk = [&](const TypeDecl& d,
                                                                     const std::string& prefix) {
    std::string fqn = prefix.empty() ? d.simple_name : prefix + "." + d.simple_name;
    out.push_back(fqn);
    for (const auto& n : d.nested) walk(n, fqn);
  };
  for (const auto& d : unit.types) walk(d, unit.package_name);
  return out;
}

}  // namespace ucov
