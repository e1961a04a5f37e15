#include "ucov/printer.hpp"

#include <sstream>

namespace ucov {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string modifiers_prefix(ModifierSet mods) {
  std::string out;
  for (const auto& name : mods.names()) {
    if (name == "packagePrivate") continue;
    out += name;
    out += ' ';
  }
  return out;
}

class Printer {
 public:
  std::string unit(const SourceUnit& u) {
    if (!u.package_name.empty()) out_ << "package " << u.package_name << ";\n";
    for (const auto& imp : u.imports) {
      out_ << "import " << (imp.is_static ? "static " : "") << imp.qualified()
           << (imp.on_demand ? ".*" : "") << ";\n";
    }
    for (const auto& t : u.types) type_decl(t);
    return out_.str();
  }

  static std::string type(const TypeRef& t) {
    std::string out;
    switch (t.wildcard) {
      case TypeRef::Wildcard::Unbounded: return "?";
      case TypeRef::Wildcard::Extends: return "? extends " + type(t.bound.front());
      case TypeRef::Wildcard::Super: return "? super " + type(t.bound.front());
      case TypeRef::Wildcard::None: break;
    }
    out = t.qualified();
    if (t.diamond) {
      out += "<>";
    } else if (!t.args.empty()) {
      out += '<';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += type(t.args[i]);
      }
      out += '>';
    }
    for (int i = 0; i < t.dims; ++i) out += "[]";
    return out;
  }

  std::string expr(const Expr& e) {
    return std::visit(
        overloaded{
            [](const LiteralExpr& n) { return n.text; },
            [](const NameExpr& n) { return n.name; },
            [](const ThisExpr&) { return std::string("this"); },
            [](const SuperExpr&) { return std::string("super"); },
            [&](const FieldAccessExpr& n) { return expr(*n.target) + "." + n.name; },
            [&](const CallExpr& n) {
              std::string s = n.target ? expr(*n.target) + "." : "";
              return s + n.name + args(n.args);
            },
            [&](const CtorCallExpr& n) {
              return std::string(n.is_super ? "super" : "this") + args(n.args);
            },
            [&](const NewExpr& n) {
              std::string s = "new " + type(n.type) + args(n.args);
              if (n.body) s += " " + anonymous_body(*n.body);
              return s;
            },
            [&](const NewArrayExpr& n) {
              std::string s = "new " + type(n.element);
              for (const auto& d : n.dim_exprs) s += "[" + expr(*d) + "]";
              for (int i = static_cast<int>(n.dim_exprs.size()); i < n.dims; ++i) s += "[]";
              if (n.has_init) {
                s += " {";
                for (std::size_t i = 0; i < n.init.size(); ++i) {
                  if (i > 0) s += ", ";
                  s += expr(*n.init[i]);
                }
                s += "}";
              }
              return s;
            },
            [&](const AssignExpr& n) {
              return "(" + expr(*n.target) + " " + n.op + " " + expr(*n.value) + ")";
            },
            [&](const BinaryExpr& n) {
              return "(" + expr(*n.lhs) + " " + n.op + " " + expr(*n.rhs) + ")";
            },
            [&](const UnaryExpr& n) {
              if (n.postfix) return "(" + expr(*n.operand) + n.op + ")";
              return "(" + n.op + expr(*n.operand) + ")";
            },
            [&](const ConditionalExpr& n) {
              return "(" + expr(*n.cond) + " ? " + expr(*n.then_expr) + " : " +
                     expr(*n.else_expr) + ")";
            },
            [&](const CastExpr& n) { return "((" + type(n.type) + ") " + expr(*n.operand) + ")"; },
            [&](const LambdaExpr& n) { return lambda(n); },
            [&](const IndexExpr& n) {
              return expr(*n.target) + "[" + expr(*n.index) + "]";
            },
            [](const ClassLiteralExpr& n) { return type(n.type) + ".class"; },
        },
        e.node);
  }

 private:
  std::string args(const std::vector<ExprPtr>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i > 0) s += ", ";
      s += expr(*a[i]);
    }
    return s + ")";
  }

  std::string lambda(const LambdaExpr& n) {
    std::string s = "(";
    if (n.parenthesized) s += "(";
    for (std::size_t i = 0; i < n.params.size(); ++i) {
      if (i > 0) s += ", ";
      if (n.params[i].type) s += type(*n.params[i].type) + " ";
      s += n.params[i].name;
    }
    if (n.parenthesized) s += ")";
    s += " -> ";
    if (n.body_block) {
      s += inline_block(*n.body_block);
    } else {
      s += expr(*n.body_expr);
    }
    return s + ")";
  }

  std::string inline_block(const Block& b) {
    Printer nested;
    nested.depth_ = depth_ + 1;
    nested.block(b);
    std::string text = nested.out_.str();
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
  }

  std::string anonymous_body(const TypeDecl& body) {
    Printer nested;
    nested.depth_ = depth_ + 1;
    nested.type_body(body);
    std::string text = nested.out_.str();
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
  }

  void indent() {
    for (int i = 0; i < depth_; ++i) out_ << "  ";
  }

  static std::string type_params(const std::vector<TypeParam>& tps) {
    if (tps.empty()) return "";
    std::string s = "<";
    for (std::size_t i = 0; i < tps.size(); ++i) {
      if (i > 0) s += ", ";
      s += tps[i].name;
      for (std::size_t b = 0; b < tps[i].bounds.size(); ++b) {
        s += b == 0 ? " extends " : " & ";
        s += type(tps[i].bounds[b]);
      }
    }
    return s + ">";
  }

  static std::string type_list(const std::vector<TypeRef>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i > 0) s += ", ";
      s += type(ts[i]);
    }
    return s;
  }

  void type_decl(const TypeDecl& t) {
    indent();
    out_ << modifiers_prefix(t.modifiers) << (t.kind == TypeKind::Class ? "class " : "interface ")
         << t.simple_name << type_params(t.type_params);
    if (!t.extends_refs.empty()) out_ << " extends " << type_list(t.extends_refs);
    if (!t.implements_refs.empty()) out_ << " implements " << type_list(t.implements_refs);
    if (!t.permits_refs.empty()) out_ << " permits " << type_list(t.permits_refs);
    out_ << ' ';
    type_body(t);
  }

  void type_body(const TypeDecl& t) {
    out_ << "{\n";
    ++depth_;
    for (const auto& m : t.members) member(m);
    for (const auto& n : t.nested) type_decl(n);
    --depth_;
    indent();
    out_ << "}\n";
  }

  void member(const MemberDecl& m) {
    indent();
    out_ << modifiers_prefix(m.modifiers);
    if (!m.type_params.empty()) out_ << type_params(m.type_params) << ' ';
    if (m.kind == MemberKind::Field) {
      out_ << type(*m.field_type) << ' ' << m.name;
      if (m.initializer) out_ << " = " << expr(*m.initializer);
      out_ << ";\n";
      return;
    }
    if (m.kind == MemberKind::Method) out_ << (m.return_type ? type(*m.return_type) : "void") << ' ';
    out_ << m.name << '(';
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i > 0) out_ << ", ";
      if (m.params[i].is_final) out_ << "final ";
      out_ << type(m.params[i].type) << ' ' << m.params[i].name;
    }
    out_ << ')';
    if (!m.throws_refs.empty()) out_ << " throws " << type_list(m.throws_refs);
    if (m.body) {
      out_ << ' ';
      block(*m.body);
    } else {
      out_ << ";\n";
    }
  }

  void block(const Block& b) {
    out_ << "{\n";
    ++depth_;
    for (const auto& s : b.stmts) {
      indent();
      stmt(s);
    }
    --depth_;
    indent();
    out_ << "}\n";
  }

  void local(const LocalDeclStmt& d) {
    if (d.is_final) out_ << "final ";
    out_ << type(d.type) << ' ' << d.name;
    if (d.init) out_ << " = " << expr(*d.init);
  }

  void stmt(const Stmt& s) {
    std::visit(overloaded{
                   [&](const LocalDeclStmt& d) {
                     local(d);
                     out_ << ";\n";
                   },
                   [&](const ExprStmt& e) { out_ << expr(*e.expr) << ";\n"; },
                   [&](const IfStmt& n) {
                     out_ << "if (" << expr(*n.cond) << ") ";
                     keep_block(*n.then_stmt);
                     if (n.else_stmt) {
                       indent();
                       out_ << "else ";
                       keep_block(*n.else_stmt);
                     }
                   },
                   [&](const WhileStmt& n) {
                     out_ << "while (" << expr(*n.cond) << ") ";
                     keep_block(*n.body);
                   },
                   [&](const ForStmt& n) {
                     out_ << "for (";
                     for (std::size_t i = 0; i < n.init.size(); ++i) {
                       if (i > 0) out_ << ", ";
                       if (const auto* d = n.init[i].as<LocalDeclStmt>()) {
                         local(*d);
                       } else {
                         out_ << expr(*n.init[i].as<ExprStmt>()->expr);
                       }
                     }
                     out_ << "; ";
                     if (n.cond) out_ << expr(*n.cond);
                     out_ << "; ";
                     for (std::size_t i = 0; i < n.update.size(); ++i) {
                       if (i > 0) out_ << ", ";
                       out_ << expr(*n.update[i]);
                     }
                     out_ << ") ";
                     keep_block(*n.body);
                   },
                   [&](const ForEachStmt& n) {
                     out_ << "for (" << (n.is_final ? "final " : "") << type(n.type) << ' '
                          << n.name << " : " << expr(*n.iterable) << ") ";
                     keep_block(*n.body);
                   },
                   [&](const ReturnStmt& n) {
                     out_ << "return";
                     if (n.value) out_ << ' ' << expr(*n.value);
                     out_ << ";\n";
                   },
                   [&](const ThrowStmt& n) { out_ << "throw " << expr(*n.value) << ";\n"; },
                   [&](const TryStmt& n) {
                     out_ << "try ";
                     block(*n.body);
                     for (const auto& c : n.catches) {
                       indent();
                       out_ << "catch (";
                       for (std::size_t i = 0; i < c.types.size(); ++i) {
                         if (i > 0) out_ << " | ";
                         out_ << type(c.types[i]);
                       }
                       out_ << ' ' << c.name << ") ";
                       block(*c.body);
                     }
                     if (n.finally_block) {
                       indent();
                       out_ << "finally ";
                       block(*n.finally_block);
                     }
                   },
                   [&](const BreakStmt&) { out_ << "break;\n"; },
                   [&](const ContinueStmt&) { out_ << "continue;\n"; },
                   [&](const EmptyStmt&) { out_ << ";\n"; },
                   [&](const BlockStmt& b) { block(*b.block); },
               },
               s.node);
  }

  // Control-flow bodies are rendered exactly as parsed: a block stays a block
  // and a single statement stays a single statement.
  void keep_block(const Stmt& s) {
    if (const auto* b = s.as<BlockStmt>()) {
      block(*b->block);
      return;
    }
    out_ << "\n";
    ++depth_;
    indent();
    stmt(s);
    --depth_;
  }

  std::ostringstream out_;
  int depth_ = 0;
};

// -- structural equality ------------------------------------------------------

bool eq(const TypeRef& a, const TypeRef& b);
bool eq(const Expr& a, const Expr& b);
bool eq(const Stmt& a, const Stmt& b);
bool eq(const Block& a, const Block& b);
bool eq(const TypeDecl& a, const TypeDecl& b);
bool eq(const TypeParam& a, const TypeParam& b);
bool eq(const LambdaParam& a, const LambdaParam& b);
bool eq(const CatchClause& x, const CatchClause& y);
bool eq(const Param& a, const Param& b);
bool eq(const MemberDecl& a, const MemberDecl& b);
bool eq(const ImportDecl& a, const ImportDecl& b);

template <class T>
bool eq_vec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i], b[i])) return false;
  }
  return true;
}

template <class T>
bool eq_ptr(const std::unique_ptr<T>& a, const std::unique_ptr<T>& b) {
  if (!a || !b) return !a && !b;
  return eq(*a, *b);
}

template <class T>
bool eq_ptrs(const std::vector<std::unique_ptr<T>>& a, const std::vector<std::unique_ptr<T>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!eq_ptr(a[i], b[i])) return false;
  }
  return true;
}

bool eq(const TypeRef& a, const TypeRef& b) {
  return a.name == b.name && a.diamond == b.diamond && a.wildcard == b.wildcard &&
         a.dims == b.dims && eq_vec(a.args, b.args) && eq_vec(a.bound, b.bound);
}

bool eq(const TypeParam& a, const TypeParam& b) { return a.name == b.name && eq_vec(a.bounds, b.bounds); }

bool eq(const std::optional<TypeRef>& a, const std::optional<TypeRef>& b) {
  if (!a || !b) return !a && !b;
  return eq(*a, *b);
}

bool eq(const LambdaParam& a, const LambdaParam& b) { return a.name == b.name && eq(a.type, b.type); }

bool eq(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const LiteralExpr& x) {
            const auto& y = std::get<LiteralExpr>(b.node);
            return x.kind == y.kind && x.text == y.text;
          },
          [&](const NameExpr& x) { return x.name == std::get<NameExpr>(b.node).name; },
          [&](const ThisExpr&) { return true; },
          [&](const SuperExpr&) { return true; },
          [&](const FieldAccessExpr& x) {
            const auto& y = std::get<FieldAccessExpr>(b.node);
            return x.name == y.name && eq_ptr(x.target, y.target);
          },
          [&](const CallExpr& x) {
            const auto& y = std::get<CallExpr>(b.node);
            return x.name == y.name && eq_ptr(x.target, y.target) && eq_ptrs(x.args, y.args);
          },
          [&](const CtorCallExpr& x) {
            const auto& y = std::get<CtorCallExpr>(b.node);
            return x.is_super == y.is_super && eq_ptrs(x.args, y.args);
          },
          [&](const NewExpr& x) {
            const auto& y = std::get<NewExpr>(b.node);
            return eq(x.type, y.type) && eq_ptrs(x.args, y.args) && eq_ptr(x.body, y.body);
          },
          [&](const NewArrayExpr& x) {
            const auto& y = std::get<NewArrayExpr>(b.node);
            return eq(x.element, y.element) && x.dims == y.dims && x.has_init == y.has_init &&
                   eq_ptrs(x.dim_exprs, y.dim_exprs) && eq_ptrs(x.init, y.init);
          },
          [&](const AssignExpr& x) {
            const auto& y = std::get<AssignExpr>(b.node);
            return x.op == y.op && eq_ptr(x.target, y.target) && eq_ptr(x.value, y.value);
          },
          [&](const BinaryExpr& x) {
            const auto& y = std::get<BinaryExpr>(b.node);
            return x.op == y.op && eq_ptr(x.lhs, y.lhs) && eq_ptr(x.rhs, y.rhs);
          },
          [&](const UnaryExpr& x) {
            const auto& y = std::get<UnaryExpr>(b.node);
            return x.op == y.op && x.postfix == y.postfix && eq_ptr(x.operand, y.operand);
          },
          [&](const ConditionalExpr& x) {
            const auto& y = std::get<ConditionalExpr>(b.node);
            return eq_ptr(x.cond, y.cond) && eq_ptr(x.then_expr, y.then_expr) &&
                   eq_ptr(x.else_expr, y.else_expr);
          },
          [&](const CastExpr& x) {
            const auto& y = std::get<CastExpr>(b.node);
            return eq(x.type, y.type) && eq_ptr(x.operand, y.operand);
          },
          [&](const LambdaExpr& x) {
            const auto& y = std::get<LambdaExpr>(b.node);
            return x.parenthesized == y.parenthesized && eq_vec(x.params, y.params) &&
                   eq_ptr(x.body_expr, y.body_expr) && eq_ptr(x.body_block, y.body_block);
          },
          [&](const IndexExpr& x) {
            const auto& y = std::get<IndexExpr>(b.node);
            return eq_ptr(x.target, y.target) && eq_ptr(x.index, y.index);
          },
          [&](const ClassLiteralExpr& x) { return eq(x.type, std::get<ClassLiteralExpr>(b.node).type); },
      },
      a.node);
}

bool eq(const LocalDeclStmt& x, const LocalDeclStmt& y) {
  return x.is_final == y.is_final && eq(x.type, y.type) && x.name == y.name && eq_ptr(x.init, y.init);
}

bool eq(const CatchClause& x, const CatchClause& y) {
  return eq_vec(x.types, y.types) && x.name == y.name && eq_ptr(x.body, y.body);
}

bool eq(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const LocalDeclStmt& x) { return eq(x, std::get<LocalDeclStmt>(b.node)); },
          [&](const ExprStmt& x) { return eq_ptr(x.expr, std::get<ExprStmt>(b.node).expr); },
          [&](const IfStmt& x) {
            const auto& y = std::get<IfStmt>(b.node);
            return eq_ptr(x.cond, y.cond) && eq_ptr(x.then_stmt, y.then_stmt) &&
                   eq_ptr(x.else_stmt, y.else_stmt);
          },
          [&](const WhileStmt& x) {
            const auto& y = std::get<WhileStmt>(b.node);
            return eq_ptr(x.cond, y.cond) && eq_ptr(x.body, y.body);
          },
          [&](const ForStmt& x) {
            const auto& y = std::get<ForStmt>(b.node);
            return eq_vec(x.init, y.init) && eq_ptr(x.cond, y.cond) && eq_ptrs(x.update, y.update) &&
                   eq_ptr(x.body, y.body);
          },
          [&](const ForEachStmt& x) {
            const auto& y = std::get<ForEachStmt>(b.node);
            return x.is_final == y.is_final && eq(x.type, y.type) && x.name == y.name &&
                   eq_ptr(x.iterable, y.iterable) && eq_ptr(x.body, y.body);
          },
          [&](const ReturnStmt& x) { return eq_ptr(x.value, std::get<ReturnStmt>(b.node).value); },
          [&](const ThrowStmt& x) { return eq_ptr(x.value, std::get<ThrowStmt>(b.node).value); },
          [&](const TryStmt& x) {
            const auto& y = std::get<TryStmt>(b.node);
            return eq_ptr(x.body, y.body) && eq_vec(x.catches, y.catches) &&
                   eq_ptr(x.finally_block, y.finally_block);
          },
          [&](const BreakStmt&) { return true; },
          [&](const ContinueStmt&) { return true; },
          [&](const EmptyStmt&) { return true; },
          [&](const BlockStmt& x) { return eq_ptr(x.block, std::get<BlockStmt>(b.node).block); },
      },
      a.node);
}

bool eq(const Block& a, const Block& b) { return eq_vec(a.stmts, b.stmts); }

bool eq(const Param& a, const Param& b) {
  return a.is_final == b.is_final && eq(a.type, b.type) && a.name == b.name;
}

bool eq(const MemberDecl& a, const MemberDecl& b) {
  return a.kind == b.kind && a.name == b.name && a.modifiers == b.modifiers &&
         eq_vec(a.type_params, b.type_params) && eq(a.return_type, b.return_type) &&
         eq_vec(a.params, b.params) && eq_vec(a.throws_refs, b.throws_refs) &&
         eq(a.field_type, b.field_type) && eq_ptr(a.initializer, b.initializer) &&
         eq_ptr(a.body, b.body);
}

bool eq(const TypeDecl& a, const TypeDecl& b) {
  return a.kind == b.kind && a.simple_name == b.simple_name && a.modifiers == b.modifiers &&
         eq_vec(a.type_params, b.type_params) && eq_vec(a.extends_refs, b.extends_refs) &&
         eq_vec(a.implements_refs, b.implements_refs) && eq_vec(a.permits_refs, b.permits_refs) &&
         eq_vec(a.members, b.members) && eq_vec(a.nested, b.nested);
}

bool eq(const ImportDecl& a, const ImportDecl& b) {
  return a.name == b.name && a.on_demand == b.on_demand && a.is_static == b.is_static;
}

}  // namespace

std::string render(const SourceUnit& unit) { return Printer{}.unit(unit); }
std::string render(const TypeRef& type) { return Printer::type(type); }
std::string render(const Expr& expr) { return Printer{}.expr(expr); }

bool structurally_equal(const SourceUnit& a, const SourceUnit& b) {
  return a.package_name == b.package_name && eq_vec(a.imports, b.imports) &&
         eq_vec(a.types, b.types);
}

bool structurally_equal(const TypeRef& a, const TypeRef& b) { return eq(a, b); }

}  // namespace ucov
