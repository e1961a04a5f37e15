#include "ucov/parser.hpp"

#include <array>
#include <optional>
#include <utility>

#include "ucov/errors.hpp"
#include "ucov/lexer.hpp"

namespace ucov {

namespace {

enum class Container { TopLevel, Class, Interface };

constexpr std::array<std::string_view, 8> kPrimitiveKeywords = {
    "boolean", "byte", "short", "int", "long", "char", "float", "double"};

constexpr std::array<std::string_view, 5> kInertModifiers = {"synchronized", "transient",
                                                             "volatile", "native", "strictfp"};

constexpr std::array<std::string_view, 9> kAssignOps = {"=",  "+=", "-=", "*=", "/=",
                                                        "%=", "&=", "|=", "^="};

bool is_primitive_kw(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  for (auto p : kPrimitiveKeywords) {
    if (t.text == p) return true;
  }
  return false;
}

ExprPtr make_expr(Location loc, Expr::Node node) {
  auto e = std::make_unique<Expr>();
  e->loc = std::move(loc);
  e->node = std::move(node);
  return e;
}

Stmt make_stmt(Location loc, Stmt::Node node) {
  Stmt s;
  s.loc = std::move(loc);
  s.node = std::move(node);
  return s;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string path) : toks_(std::move(toks)), path_(std::move(path)) {}

  SourceUnit unit() {
    SourceUnit u;
    u.path = path_;
    if (accept_kw("package")) {
      std::vector<std::string> name = qualified_name();
      for (const auto& seg : name) {
        if (!u.package_name.empty()) u.package_name += '.';
        u.package_name += seg;
      }
      expect_op(";");
    }
    while (cur().kw("import")) u.imports.push_back(import_decl());
    while (cur().kind != TokenKind::End) {
      if (accept_op(";")) continue;
      ModifierSet mods = modifiers();
      u.types.push_back(type_decl(mods, Container::TopLevel));
    }
    return u;
  }

 private:
  // -- token helpers --------------------------------------------------------

  [[nodiscard]] const Token& cur() const { return toks_[pos_]; }
  [[nodiscard]] const Token& at(std::size_t k) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(cur(), message); }

  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    const std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.loc, message + ", found " + found);
  }

  bool accept_op(std::string_view op) {
    if (!cur().op(op)) return false;
    take();
    return true;
  }
  bool accept_kw(std::string_view kw) {
    if (!cur().kw(kw)) return false;
    take();
    return true;
  }
  void expect_op(std::string_view op) {
    if (!accept_op(op)) fail("expected '" + std::string(op) + "'");
  }
  std::string ident(Location* loc = nullptr) {
    if (cur().kind != TokenKind::Identifier) fail("expected identifier");
    if (loc != nullptr) *loc = cur().loc;
    return take().text;
  }

  std::vector<std::string> qualified_name() {
    std::vector<std::string> name{ident()};
    while (cur().op(".") && at(1).kind == TokenKind::Identifier) {
      take();
      name.push_back(ident());
    }
    return name;
  }

  // -- declarations -------------------------------------------------------

  ImportDecl import_decl() {
    ImportDecl imp;
    imp.loc = cur().loc;
    take();
    imp.is_static = accept_kw("static");
    imp.name.push_back(ident());
    while (accept_op(".")) {
      if (accept_op("*")) {
        imp.on_demand = true;
        break;
      }
      imp.name.push_back(ident());
    }
    if (imp.is_static && !imp.on_demand && imp.name.size() < 2)
      fail("static import must name a member of a type");
    expect_op(";");
    return imp;
  }

  void annotation() {
    const Token& at_tok = take();
    if (cur().kw("interface")) fail_at(at_tok, "annotation type declarations are not supported");
    qualified_name();
    if (cur().op("(")) fail("annotation arguments are not supported");
  }

  ModifierSet modifiers() {
    ModifierSet mods;
    while (true) {
      if (cur().op("@")) {
        annotation();
        continue;
      }
      if (cur().kind != TokenKind::Keyword) break;
      bool inert = false;
      for (auto m : kInertModifiers) inert = inert || cur().text == m;
      if (inert) {
        take();
        continue;
      }
      const auto m = modifier_from_name(cur().text);
      if (!m || *m == Modifier::PackagePrivate) break;
      if (mods.has(*m)) fail("repeated modifier");
      mods.add(*m);
      take();
    }
    return mods;
  }

  std::vector<TypeParam> type_params() {
    std::vector<TypeParam> out;
    expect_op("<");
    do {
      TypeParam tp;
      tp.name = ident(&tp.loc);
      if (accept_kw("extends")) {
        tp.bounds.push_back(type_ref());
        while (accept_op("&")) tp.bounds.push_back(type_ref());
      }
      out.push_back(std::move(tp));
    } while (accept_op(","));
    expect_op(">");
    return out;
  }

  std::vector<TypeRef> type_ref_list() {
    std::vector<TypeRef> out{type_ref()};
    while (accept_op(",")) out.push_back(type_ref());
    return out;
  }

  TypeDecl type_decl(ModifierSet mods, Container container) {
    const Token& kw_tok = cur();
    TypeDecl decl;
    if (accept_kw("class")) {
      decl.kind = TypeKind::Class;
    } else if (accept_kw("interface")) {
      decl.kind = TypeKind::Interface;
    } else {
      fail("expected 'class' or 'interface'");
    }
    decl.simple_name = ident(&decl.location);
    if (cur().op("<")) decl.type_params = type_params();
    if (accept_kw("extends")) decl.extends_refs = type_ref_list();
    if (cur().kw("implements")) {
      if (decl.kind == TypeKind::Interface) fail("interfaces cannot implement types");
      take();
      decl.implements_refs = type_ref_list();
    }
    if (accept_kw("permits")) decl.permits_refs = type_ref_list();
    if (decl.kind == TypeKind::Class && decl.extends_refs.size() > 1)
      fail_at(kw_tok, "a class can extend at most one type");

    if (mods.visibility_count() > 1) fail_at(kw_tok, "conflicting visibility modifiers");
    if (mods.has(Modifier::Default)) fail_at(kw_tok, "'default' is not a type modifier");
    if (mods.has(Modifier::Final) && (mods.has(Modifier::Sealed) || mods.has(Modifier::Abstract)))
      fail_at(kw_tok, "a final type cannot be sealed or abstract");
    if (decl.kind == TypeKind::Interface && mods.has(Modifier::Final))
      fail_at(kw_tok, "an interface cannot be final");
    if (container == Container::TopLevel) {
      if (mods.has(Modifier::Protected) || mods.has(Modifier::Private) ||
          mods.has(Modifier::Static))
        fail_at(kw_tok, "illegal modifier for a top-level type");
    }
    if (container == Container::Interface) {
      if (mods.has(Modifier::Protected) || mods.has(Modifier::Private))
        fail_at(kw_tok, "interface member types are implicitly public");
      mods.add(Modifier::Public);
      mods.add(Modifier::Static);
    }
    if (mods.visibility_count() == 0) mods.add(Modifier::PackagePrivate);
    decl.modifiers = mods;

    type_body(decl);
    return decl;
  }

  void type_body(TypeDecl& decl) {
    expect_op("{");
    const Container here = decl.kind == TypeKind::Interface ? Container::Interface : Container::Class;
    while (!cur().op("}")) {
      if (cur().kind == TokenKind::End) fail("expected '}'");
      if (accept_op(";")) continue;
      if (cur().op("{") || (cur().kw("static") && at(1).op("{")))
        fail("initializer blocks are not supported");
      ModifierSet mods = modifiers();
      if (cur().kw("class") || cur().kw("interface")) {
        decl.nested.push_back(type_decl(mods, here));
      } else {
        decl.members.push_back(member(mods, decl));
      }
    }
    take();
  }

  MemberDecl member(ModifierSet mods, const TypeDecl& owner) {
    const Token& first = cur();
    const bool in_interface = owner.kind == TypeKind::Interface;
    MemberDecl m;
    if (cur().op("<")) m.type_params = type_params();

    bool returns_void = false;
    if (cur().kind == TokenKind::Identifier && at(1).op("(")) {
      if (owner.anonymous() || cur().text != owner.simple_name)
        fail("method declaration lacks a return type");
      if (in_interface) fail("interfaces cannot declare constructors");
      m.kind = MemberKind::Constructor;
      m.name = ident(&m.location);
    } else {
      if (accept_kw("void")) {
        returns_void = true;
      } else {
        m.return_type = type_ref();
      }
      m.name = ident(&m.location);
      m.kind = cur().op("(") ? MemberKind::Method : MemberKind::Field;
    }

    if (m.kind == MemberKind::Field) {
      if (returns_void) fail_at(first, "a field cannot have type void");
      if (!m.type_params.empty()) fail_at(first, "a field cannot declare type parameters");
      m.field_type = std::move(m.return_type);
      m.return_type.reset();
      if (accept_op("=")) m.initializer = expression();
      expect_op(";");
    } else {
      params(m.params);
      if (accept_kw("throws")) m.throws_refs = type_ref_list();
      if (cur().op("{")) {
        m.body = block();
      } else {
        expect_op(";");
      }
    }

    check_member_modifiers(mods, m, in_interface, first);
    m.modifiers = mods;
    return m;
  }

  void check_member_modifiers(ModifierSet& mods, const MemberDecl& m, bool in_interface,
                              const Token& first) const {
    if (mods.visibility_count() > 1) fail_at(first, "conflicting visibility modifiers");
    if (mods.has(Modifier::Sealed)) fail_at(first, "'sealed' applies to types only");
    if (mods.has(Modifier::Final) && mods.has(Modifier::Abstract))
      fail_at(first, "a member cannot be both final and abstract");
    const bool has_body = m.body != nullptr;

    if (m.kind == MemberKind::Field) {
      if (mods.has(Modifier::Abstract) || mods.has(Modifier::Default))
        fail_at(first, "illegal modifier for a field");
      if (in_interface) {
        if (mods.has(Modifier::Protected) || mods.has(Modifier::Private))
          fail_at(first, "interface fields are implicitly public");
        mods.add(Modifier::Public);
        mods.add(Modifier::Static);
        mods.add(Modifier::Final);
      }
    } else if (m.kind == MemberKind::Constructor) {
      if (mods.has(Modifier::Abstract) || mods.has(Modifier::Static) ||
          mods.has(Modifier::Final) || mods.has(Modifier::Default))
        fail_at(first, "illegal modifier for a constructor");
      if (!has_body) fail_at(first, "constructor without a body");
    } else if (in_interface) {
      if (mods.has(Modifier::Protected)) fail_at(first, "interface methods cannot be protected");
      if (mods.has(Modifier::Default) && (mods.has(Modifier::Static) || mods.has(Modifier::Abstract)))
        fail_at(first, "illegal combination of modifiers for an interface method");
      const bool concrete =
          mods.has(Modifier::Default) || mods.has(Modifier::Static) || mods.has(Modifier::Private);
      if (concrete && !has_body) fail_at(first, "missing method body");
      if (!concrete && has_body) fail_at(first, "interface method with a body must be default or static");
      if (!concrete) mods.add(Modifier::Abstract);
      if (!mods.has(Modifier::Private)) mods.add(Modifier::Public);
    } else {
      if (mods.has(Modifier::Default)) fail_at(first, "'default' is only allowed in interfaces");
      if (mods.has(Modifier::Abstract) && has_body) fail_at(first, "abstract method with a body");
      if (!mods.has(Modifier::Abstract) && !has_body) fail_at(first, "missing method body");
    }
    if (mods.visibility_count() == 0) mods.add(Modifier::PackagePrivate);
  }

  void params(std::vector<Param>& out) {
    expect_op("(");
    if (accept_op(")")) return;
    do {
      Param p;
      p.is_final = final_only_modifiers();
      p.type = type_ref();
      p.name = ident(&p.loc);
      out.push_back(std::move(p));
    } while (accept_op(","));
    expect_op(")");
  }

  /// Modifiers allowed on parameters and locals: annotations and `final`.
  bool final_only_modifiers() {
    const Token& first = cur();
    const ModifierSet mods = modifiers();
    ModifierSet rest = mods;
    rest.remove(Modifier::Final);
    if (!rest.empty()) fail_at(first, "illegal modifier for a variable");
    return mods.has(Modifier::Final);
  }

  // -- types ----------------------------------------------------------------

  TypeRef type_ref() {
    TypeRef t;
    if (is_primitive_kw(cur())) {
      t.loc = cur().loc;
      t.name.push_back(take().text);
    } else {
      t.name.push_back(ident(&t.loc));
      while (cur().op(".") && at(1).kind == TokenKind::Identifier) {
        take();
        t.name.push_back(ident(&t.loc));
      }
      if (cur().op("<")) type_args(t);
    }
    while (cur().op("[") && at(1).op("]")) {
      take();
      take();
      ++t.dims;
    }
    return t;
  }

  void type_args(TypeRef& t) {
    expect_op("<");
    if (accept_op(">")) {
      t.diamond = true;
      return;
    }
    do {
      if (cur().op("?")) {
        TypeRef w;
        w.loc = take().loc;
        w.wildcard = TypeRef::Wildcard::Unbounded;
        if (accept_kw("extends")) {
          w.wildcard = TypeRef::Wildcard::Extends;
          w.bound.push_back(type_ref());
        } else if (accept_kw("super")) {
          w.wildcard = TypeRef::Wildcard::Super;
          w.bound.push_back(type_ref());
        }
        t.args.push_back(std::move(w));
      } else {
        TypeRef arg = type_ref();
        if (arg.is_primitive() && arg.dims == 0) fail("primitive type argument");
        t.args.push_back(std::move(arg));
      }
    } while (accept_op(","));
    expect_op(">");
  }

  std::optional<TypeRef> try_type_ref() {
    const std::size_t save = pos_;
    try {
      return type_ref();
    } catch (const ParseError&) {
      pos_ = save;
      return std::nullopt;
    }
  }

  // -- statements -----------------------------------------------------------

  std::unique_ptr<Block> block() {
    auto b = std::make_unique<Block>();
    b->loc = cur().loc;
    expect_op("{");
    while (!cur().op("}")) {
      if (cur().kind == TokenKind::End) fail("expected '}'");
      b->stmts.push_back(statement());
    }
    take();
    return b;
  }

  std::unique_ptr<Stmt> boxed_statement() { return std::make_unique<Stmt>(statement()); }

  Stmt statement() {
    const Location loc = cur().loc;
    if (cur().op("{")) return make_stmt(loc, BlockStmt{block()});
    if (accept_op(";")) return make_stmt(loc, EmptyStmt{});
    if (accept_kw("if")) {
      IfStmt s;
      expect_op("(");
      s.cond = expression();
      expect_op(")");
      s.then_stmt = boxed_statement();
      if (accept_kw("else")) s.else_stmt = boxed_statement();
      return make_stmt(loc, std::move(s));
    }
    if (accept_kw("while")) {
      WhileStmt s;
      expect_op("(");
      s.cond = expression();
      expect_op(")");
      s.body = boxed_statement();
      return make_stmt(loc, std::move(s));
    }
    if (cur().kw("for")) return for_statement();
    if (accept_kw("return")) {
      ReturnStmt s;
      if (!cur().op(";")) s.value = expression();
      expect_op(";");
      return make_stmt(loc, std::move(s));
    }
    if (accept_kw("throw")) {
      ThrowStmt s;
      s.value = expression();
      expect_op(";");
      return make_stmt(loc, std::move(s));
    }
    if (cur().kw("try")) return try_statement();
    if (accept_kw("break")) {
      expect_op(";");
      return make_stmt(loc, BreakStmt{});
    }
    if (accept_kw("continue")) {
      expect_op(";");
      return make_stmt(loc, ContinueStmt{});
    }
    if (cur().kw("class") || cur().kw("interface") || cur().kw("enum"))
      fail("local type declarations are not supported");

    if (cur().kw("final") || cur().op("@")) {
      const bool is_final = final_only_modifiers();
      Stmt s = local_decl(loc);
      std::get<LocalDeclStmt>(s.node).is_final = is_final;
      expect_op(";");
      return s;
    }
    if (looks_like_local_decl()) {
      Stmt s = local_decl(loc);
      expect_op(";");
      return s;
    }
    ExprStmt s;
    s.expr = expression();
    expect_op(";");
    return make_stmt(loc, std::move(s));
  }

  bool looks_like_local_decl() {
    if (cur().kind != TokenKind::Identifier && !is_primitive_kw(cur())) return false;
    const std::size_t save = pos_;
    const bool ok = try_type_ref().has_value() && cur().kind == TokenKind::Identifier &&
                    (at(1).op("=") || at(1).op(";"));
    pos_ = save;
    return ok;
  }

  Stmt local_decl(const Location& loc) {
    LocalDeclStmt d;
    d.type = type_ref();
    d.name = ident(&d.name_loc);
    if (accept_op("=")) d.init = expression();
    return make_stmt(loc, std::move(d));
  }

  Stmt for_statement() {
    const Location loc = take().loc;
    expect_op("(");

    // Enhanced for: [final] Type name ':' expr
    {
      const std::size_t save = pos_;
      try {
        const bool is_final = final_only_modifiers();
        auto t = try_type_ref();
        if (t && cur().kind == TokenKind::Identifier && at(1).op(":")) {
          ForEachStmt s;
          s.is_final = is_final;
          s.type = std::move(*t);
          s.name = ident(&s.name_loc);
          take();
          s.iterable = expression();
          expect_op(")");
          s.body = boxed_statement();
          return make_stmt(loc, std::move(s));
        }
      } catch (const ParseError&) {
      }
      pos_ = save;
    }

    ForStmt s;
    if (!cur().op(";")) {
      const Location init_loc = cur().loc;
      if (cur().kw("final") || looks_like_local_decl()) {
        const bool is_final = final_only_modifiers();
        Stmt d = local_decl(init_loc);
        std::get<LocalDeclStmt>(d.node).is_final = is_final;
        s.init.push_back(std::move(d));
      } else {
        do {
          const Location el = cur().loc;
          s.init.push_back(make_stmt(el, ExprStmt{expression()}));
        } while (accept_op(","));
      }
    }
    expect_op(";");
    if (!cur().op(";")) s.cond = expression();
    expect_op(";");
    if (!cur().op(")")) {
      do {
        s.update.push_back(expression());
      } while (accept_op(","));
    }
    expect_op(")");
    s.body = boxed_statement();
    return make_stmt(loc, std::move(s));
  }

  Stmt try_statement() {
    const Location loc = take().loc;
    TryStmt s;
    if (cur().op("(")) fail("try-with-resources is not supported");
    s.body = block();
    while (accept_kw("catch")) {
      CatchClause c;
      expect_op("(");
      final_only_modifiers();
      c.types.push_back(type_ref());
      while (accept_op("|")) c.types.push_back(type_ref());
      c.name = ident(&c.name_loc);
      expect_op(")");
      c.body = block();
      s.catches.push_back(std::move(c));
    }
    if (accept_kw("finally")) s.finally_block = block();
    if (s.catches.empty() && !s.finally_block) fail("expected 'catch' or 'finally'");
    return make_stmt(loc, std::move(s));
  }

  // -- expressions ----------------------------------------------------------

  ExprPtr expression() { return assignment(); }

  ExprPtr assignment() {
    ExprPtr lhs = conditional();
    for (auto op : kAssignOps) {
      if (!cur().op(op)) continue;
      const Token& op_tok = take();
      if (!lhs->as<NameExpr>() && !lhs->as<FieldAccessExpr>() && !lhs->as<IndexExpr>())
        fail_at(op_tok, "invalid assignment target");
      ExprPtr rhs = assignment();
      Location loc = lhs->loc;
      return make_expr(std::move(loc), AssignExpr{std::string(op), std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr conditional() {
    ExprPtr cond = binary(1);
    if (!cur().op("?")) return cond;
    const Location loc = take().loc;
    ExprPtr then_e = expression();
    expect_op(":");
    ExprPtr else_e = conditional();
    return make_expr(loc, ConditionalExpr{std::move(cond), std::move(then_e), std::move(else_e)});
  }

  struct BinOp {
    std::string text;
    int prec = 0;
    std::size_t tokens = 1;
  };

  [[nodiscard]] std::optional<BinOp> peek_binary() const {
    const Token& t = cur();
    if (t.kind != TokenKind::Operator) return std::nullopt;
    if (t.text == ">") {
      const Token& t2 = at(1);
      if (t2.op(">") && t2.offset == t.end_offset) {
        const Token& t3 = at(2);
        if (t3.op(">") && t3.offset == t2.end_offset) return BinOp{">>>", 8, 3};
        return BinOp{">>", 8, 2};
      }
      return BinOp{">", 7, 1};
    }
    static const std::array<std::pair<std::string_view, int>, 16> table = {{
        {"||", 1}, {"&&", 2}, {"|", 3}, {"^", 4}, {"&", 5}, {"==", 6}, {"!=", 6}, {"<", 7},
        {"<=", 7}, {">=", 7}, {"<<", 8}, {"+", 9}, {"-", 9}, {"*", 10}, {"/", 10}, {"%", 10},
    }};
    for (const auto& [op, prec] : table) {
      if (t.text == op) return BinOp{std::string(op), prec, 1};
    }
    return std::nullopt;
  }

  ExprPtr binary(int min_prec) {
    ExprPtr lhs = unary();
    while (true) {
      const auto op = peek_binary();
      if (!op || op->prec < min_prec) break;
      const Location loc = cur().loc;
      for (std::size_t k = 0; k < op->tokens; ++k) take();
      ExprPtr rhs = binary(op->prec + 1);
      lhs = make_expr(loc, BinaryExpr{op->text, std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr unary() {
    for (std::string_view op : {"!", "~", "-", "+", "++", "--"}) {
      if (!cur().op(op)) continue;
      const Location loc = take().loc;
      ExprPtr operand = unary();
      if ((op == "++" || op == "--") && !operand->as<NameExpr>() &&
          !operand->as<FieldAccessExpr>() && !operand->as<IndexExpr>())
        throw ParseError(loc, "invalid increment target");
      return make_expr(loc, UnaryExpr{std::string(op), false, std::move(operand)});
    }
    return postfix(primary());
  }

  ExprPtr postfix(ExprPtr e) {
    while (true) {
      if (cur().op(".")) {
        take();
        if (cur().kw("class")) {
          const Token& class_tok = take();
          TypeRef t;
          if (!expr_to_type(*e, t)) fail_at(class_tok, "class literal requires a type name");
          e = make_expr(t.loc, ClassLiteralExpr{std::move(t)});
          continue;
        }
        Location loc;
        std::string name = ident(&loc);
        if (cur().op("(")) {
          CallExpr call;
          call.target = std::move(e);
          call.name = std::move(name);
          call.args = arguments();
          e = make_expr(loc, std::move(call));
        } else {
          e = make_expr(loc, FieldAccessExpr{std::move(e), std::move(name)});
        }
      } else if (cur().op("[")) {
        const Location loc = take().loc;
        ExprPtr index = expression();
        expect_op("]");
        e = make_expr(loc, IndexExpr{std::move(e), std::move(index)});
      } else if (cur().op("++") || cur().op("--")) {
        if (!e->as<NameExpr>() && !e->as<FieldAccessExpr>() && !e->as<IndexExpr>())
          fail("invalid increment target");
        const Token& op = take();
        Location loc = e->loc;
        e = make_expr(std::move(loc), UnaryExpr{op.text, true, std::move(e)});
      } else {
        return e;
      }
    }
  }

  static bool expr_to_type(const Expr& e, TypeRef& out) {
    std::vector<std::string> segments;
    const Expr* p = &e;
    while (true) {
      if (const auto* n = p->as<NameExpr>()) {
        segments.push_back(n->name);
        break;
      }
      const auto* f = p->as<FieldAccessExpr>();
      if (f == nullptr) return false;
      segments.push_back(f->name);
      p = f->target.get();
    }
    out.name.assign(segments.rbegin(), segments.rend());
    out.loc = e.loc;
    return true;
  }

  std::vector<ExprPtr> arguments() {
    std::vector<ExprPtr> args;
    expect_op("(");
    if (accept_op(")")) return args;
    do {
      args.push_back(expression());
    } while (accept_op(","));
    expect_op(")");
    return args;
  }

  ExprPtr literal(LiteralKind kind) {
    const Token& t = take();
    return make_expr(t.loc, LiteralExpr{kind, t.text});
  }

  ExprPtr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::IntLiteral: return literal(LiteralKind::Int);
      case TokenKind::LongLiteral: return literal(LiteralKind::Long);
      case TokenKind::FloatLiteral: return literal(LiteralKind::Float);
      case TokenKind::DoubleLiteral: return literal(LiteralKind::Double);
      case TokenKind::CharLiteral: return literal(LiteralKind::Char);
      case TokenKind::StringLiteral: return literal(LiteralKind::String);
      default: break;
    }
    if (t.kw("true") || t.kw("false")) return literal(LiteralKind::Boolean);
    if (t.kw("null")) return literal(LiteralKind::Null);
    if (t.kw("this")) {
      const Location loc = take().loc;
      if (cur().op("(")) return make_expr(loc, CtorCallExpr{false, arguments()});
      return make_expr(loc, ThisExpr{});
    }
    if (t.kw("super")) {
      const Location loc = take().loc;
      if (cur().op("(")) return make_expr(loc, CtorCallExpr{true, arguments()});
      if (!cur().op(".")) fail("expected '.' or '(' after 'super'");
      return make_expr(loc, SuperExpr{});
    }
    if (t.kw("new")) return new_expression();
    if (t.kind == TokenKind::Identifier) {
      if (at(1).op("->")) return lambda_single();
      Location loc = t.loc;
      std::string name = take().text;
      if (cur().op("(")) {
        CallExpr call;
        call.name = std::move(name);
        call.args = arguments();
        return make_expr(std::move(loc), std::move(call));
      }
      return make_expr(std::move(loc), NameExpr{std::move(name)});
    }
    if (is_primitive_kw(t)) {
      TypeRef type = type_ref();
      expect_op(".");
      if (!accept_kw("class")) fail("expected 'class'");
      Location loc = type.loc;
      return make_expr(std::move(loc), ClassLiteralExpr{std::move(type)});
    }
    if (t.op("(")) return parenthesized();
    fail("expected expression");
  }

  [[nodiscard]] std::size_t matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t k = open; k < toks_.size(); ++k) {
      if (toks_[k].op("(")) ++depth;
      if (toks_[k].op(")") && --depth == 0) return k;
      if (toks_[k].kind == TokenKind::End) break;
    }
    return toks_.size() - 1;
  }

  ExprPtr parenthesized() {
    const std::size_t close = matching_paren(pos_);
    if (toks_[std::min(close + 1, toks_.size() - 1)].op("->")) return lambda_parenthesized();

    const std::size_t save = pos_;
    take();
    if (auto type = try_type_ref(); type && cur().op(")")) {
      const Token& next = at(1);
      const bool primitive = type->is_primitive() && type->dims == 0;
      const bool operand_start =
          next.kind == TokenKind::Identifier || next.kind == TokenKind::IntLiteral ||
          next.kind == TokenKind::LongLiteral || next.kind == TokenKind::FloatLiteral ||
          next.kind == TokenKind::DoubleLiteral || next.kind == TokenKind::CharLiteral ||
          next.kind == TokenKind::StringLiteral || next.op("(") || next.op("!") || next.op("~") ||
          next.kw("this") || next.kw("new") || next.kw("super") || next.kw("true") ||
          next.kw("false") || next.kw("null");
      if (primitive || operand_start) {
        take();
        ExprPtr operand = unary();
        Location loc = type->loc;
        return make_expr(std::move(loc), CastExpr{std::move(*type), std::move(operand)});
      }
    }
    pos_ = save;
    take();
    ExprPtr inner = expression();
    expect_op(")");
    return inner;
  }

  ExprPtr lambda_single() {
    LambdaExpr lam;
    lam.parenthesized = false;
    LambdaParam p;
    p.name = ident(&p.loc);
    const Location loc = p.loc;
    lam.params.push_back(std::move(p));
    expect_op("->");
    lambda_body(lam);
    return make_expr(loc, std::move(lam));
  }

  ExprPtr lambda_parenthesized() {
    LambdaExpr lam;
    const Location loc = take().loc;
    if (!cur().op(")")) {
      const bool untyped =
          cur().kind == TokenKind::Identifier && (at(1).op(",") || at(1).op(")"));
      do {
        LambdaParam p;
        if (!untyped) {
          final_only_modifiers();
          p.type = type_ref();
        }
        p.name = ident(&p.loc);
        lam.params.push_back(std::move(p));
      } while (accept_op(","));
    }
    expect_op(")");
    expect_op("->");
    lambda_body(lam);
    return make_expr(loc, std::move(lam));
  }

  void lambda_body(LambdaExpr& lam) {
    if (cur().op("{")) {
      lam.body_block = block();
    } else {
      lam.body_expr = expression();
    }
  }

  ExprPtr new_expression() {
    take();
    TypeRef type;
    if (is_primitive_kw(cur())) {
      type.loc = cur().loc;
      type.name.push_back(take().text);
    } else {
      type.name.push_back(ident(&type.loc));
      while (cur().op(".") && at(1).kind == TokenKind::Identifier) {
        take();
        type.name.push_back(ident(&type.loc));
      }
      if (cur().op("<")) type_args(type);
    }
    Location loc = type.loc;

    if (cur().op("[")) {
      if (type.diamond) fail("diamond is not allowed in array creation");
      NewArrayExpr arr;
      arr.element = std::move(type);
      while (cur().op("[")) {
        take();
        if (cur().op("]")) {
          take();
        } else {
          if (arr.dims != static_cast<int>(arr.dim_exprs.size()))
            fail("sized dimension after an unsized one");
          arr.dim_exprs.push_back(expression());
          expect_op("]");
        }
        ++arr.dims;
      }
      if (cur().op("{")) {
        if (!arr.dim_exprs.empty()) fail("array initializer after sized dimensions");
        take();
        arr.has_init = true;
        if (!cur().op("}")) {
          do {
            if (cur().op("}")) break;
            arr.init.push_back(expression());
          } while (accept_op(","));
        }
        expect_op("}");
      } else if (arr.dim_exprs.empty()) {
        fail("array creation needs a size or an initializer");
      }
      return make_expr(std::move(loc), std::move(arr));
    }
    if (type.is_primitive()) fail("cannot instantiate a primitive type");

    NewExpr n;
    n.type = std::move(type);
    n.args = arguments();
    if (cur().op("{")) {
      auto body = std::make_unique<TypeDecl>();
      body->kind = TypeKind::Class;
      body->location = cur().loc;
      body->modifiers.add(Modifier::PackagePrivate);
      type_body(*body);
      n.body = std::move(body);
    }
    return make_expr(std::move(loc), std::move(n));
  }

  std::vector<Token> toks_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceUnit parse_unit(std::string_view text, const std::string& path) {
  Parser parser(tokenize(text, path), path);
  return parser.unit();
}

}  // namespace ucov
