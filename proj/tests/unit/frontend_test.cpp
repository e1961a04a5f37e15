#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "ucov/binder.hpp"
#include "ucov/errors.hpp"
#include "ucov/lexer.hpp"
#include "ucov/parser.hpp"
#include "ucov/printer.hpp"
#include "ucov/symbol_table.hpp"

namespace ucov::testing {
namespace {

// --- lexer -----------------------------------------------------------------

TEST(Lexer, TracksLinesAndColumnsAcrossComments) {
  const auto tokens = tokenize("a /* x\n y */ b // c\n  42L", "L.java");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(tokens[0].loc, (Location{"L.java", 1, 1}));
  EXPECT_EQ(tokens[1].loc, (Location{"L.java", 2, 7}));
  EXPECT_EQ(tokens[2].kind, TokenKind::LongLiteral);
  EXPECT_EQ(tokens[2].loc, (Location{"L.java", 3, 3}));
  EXPECT_EQ(tokens[3].kind, TokenKind::End);
}

TEST(Lexer, SplitsClosingAnglesForNestedGenerics) {
  const auto tokens = tokenize("a>>b", "L.java");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_TRUE(tokens[1].op(">"));
  EXPECT_TRUE(tokens[2].op(">"));
}

TEST(Lexer, RejectsUnterminatedLiteralsAndStrayCharacters) {
  EXPECT_THROW(tokenize("\"abc", "L.java"), ParseError);
  EXPECT_THROW(tokenize("/* open", "L.java"), ParseError);
  EXPECT_THROW(tokenize("a # b", "L.java"), ParseError);
}

// --- parser ----------------------------------------------------------------

TEST(Parser, ReportsLocationOfFirstError) {
  try {
    parse_unit("class A { void f( }", "A.java");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().file, "A.java");
    EXPECT_EQ(e.location().line, 1);
    EXPECT_EQ(e.location().column, 19);
  }
}

TEST(Parser, AcceptsEmptyFile) {
  const SourceUnit u = parse_unit("", "E.java");
  EXPECT_TRUE(u.types.empty());
  EXPECT_TRUE(u.package_name.empty());
}

TEST(Parser, RejectsConstructsOutsideTheSubset) {
  EXPECT_THROW(parse_unit("class A { void f() { switch (x) {} } }", "A.java"), ParseError);
  EXPECT_THROW(parse_unit("class A { void f() { int x = 1 } }", "A.java"), ParseError);
  EXPECT_THROW(parse_unit("class A", "A.java"), ParseError);
}

TEST(Parser, MakesImpliedModifiersExplicit) {
  const SourceUnit u = parse_unit("interface I { int K = 1; void m(); } class C { int f; }", "I.java");
  ASSERT_EQ(u.types.size(), 2u);
  const MemberDecl& k = u.types[0].members[0];
  EXPECT_TRUE(k.modifiers.has(Modifier::Public));
  EXPECT_TRUE(k.modifiers.has(Modifier::Static));
  EXPECT_TRUE(k.modifiers.has(Modifier::Final));
  const MemberDecl& m = u.types[0].members[1];
  EXPECT_TRUE(m.modifiers.has(Modifier::Public));
  EXPECT_TRUE(m.modifiers.has(Modifier::Abstract));
  EXPECT_TRUE(u.types[1].members[0].modifiers.has(Modifier::PackagePrivate));
  EXPECT_TRUE(u.types[1].modifiers.has(Modifier::PackagePrivate));
}

TEST(Parser, AnchorsNamesAtTheirTokens) {
  const SourceUnit u = parse_unit("package p;\nclass C extends java.util.Base {\n  void go() {}\n}", "C.java");
  const TypeDecl& c = u.types[0];
  EXPECT_EQ(u.package_name, "p");
  EXPECT_EQ(c.location, (Location{"C.java", 2, 7}));
  ASSERT_EQ(c.extends_refs.size(), 1u);
  EXPECT_EQ(c.extends_refs[0].qualified(), "java.util.Base");
  EXPECT_EQ(c.extends_refs[0].loc, (Location{"C.java", 2, 27}));
  EXPECT_EQ(c.members[0].location, (Location{"C.java", 3, 8}));
}

TEST(Parser, DistinguishesGenericCallsFromComparisons) {
  const SourceUnit u = parse_unit(
      "class C { void f() { java.util.Map<String, java.util.List<int[]>> m = null; boolean b = (a < b); "
      "x = (y >> 2); } }",
      "C.java");
  const std::string printed = render(u);
  EXPECT_NE(printed.find("java.util.Map<String, java.util.List<int[]>> m"), std::string::npos) << printed;
  EXPECT_NE(printed.find("(y >> 2)"), std::string::npos) << printed;
}

TEST(Printer, RoundTripsTheFixtureCorpora) {
  for (const char* dir : {"corpora/cli", "corpora/soup", "corpora/spark", "jdk", "arraylist"}) {
    for (const auto& u : units_in(dir)) {
      const std::string once = render(*u);
      const SourceUnit again = parse_unit(once, u->path);
      EXPECT_TRUE(structurally_equal(*u, again)) << u->path;
      EXPECT_EQ(render(again), once) << u->path;
    }
  }
}

// --- symbol table ----------------------------------------------------------

TEST(SymbolTable, RejectsDuplicateDeclarations) {
  EXPECT_THROW(build_symbol_table({unit("package p; class A {}", "A.java"), unit("package p; class A {}", "B.java")}),
               DuplicateSymbol);
  EXPECT_THROW(build_symbol_table({unit("class A { void f() {} void f() {} }")}), DuplicateSymbol);
}

TEST(SymbolTable, RejectsCyclicHierarchies) {
  EXPECT_THROW(build_symbol_table({unit("class A extends B {} class B extends A {}")}), CyclicHierarchy);
  EXPECT_THROW(build_symbol_table({unit("interface I extends I {}")}), CyclicHierarchy);
}

TEST(SymbolTable, SynthesizesDefaultConstructorOnlyWhenNoneDeclared) {
  const SymbolTable t = build_symbol_table({unit("package p; public class A {} public class B { B(int x) {} }")});
  const TypeInfo* a = t.find_type("p.A");
  ASSERT_NE(a, nullptr);
  ASSERT_EQ(a->constructors().size(), 1u);
  EXPECT_TRUE(a->constructors()[0]->synthesized());
  EXPECT_EQ(a->constructors()[0]->signature, "A()");
  EXPECT_TRUE(a->constructors()[0]->modifiers.has(Modifier::Public));
  const TypeInfo* b = t.find_type("p.B");
  ASSERT_EQ(b->constructors().size(), 1u);
  EXPECT_EQ(b->constructors()[0]->signature, "B(int)");
}

TEST(SymbolTable, KeepsExternalSupertypesUnexpanded) {
  const Lib lib = library_at("arraylist");
  const TypeInfo* list = lib.table.find_type("java.util.ArrayList");
  ASSERT_NE(list, nullptr);
  ASSERT_EQ(list->supertypes.size(), 1u);
  EXPECT_EQ(list->supertypes[0].fqn, "List");  // unresolved names stay as written
  EXPECT_TRUE(list->supertypes[0].external);
  EXPECT_TRUE(lib.table.has_external_ancestor("java.util.ArrayList"));
  EXPECT_EQ(list->find_member("add(java.lang.Object)")->value_type, "boolean");
}

TEST(SymbolTable, ResolvesNamesInJavaOrder) {
  const SymbolTable t = build_symbol_table({
      unit("package a; public class X {}", "a/X.java"),
      unit("package b; public class X {}", "b/X.java"),
      unit("package c; import b.X; import a.*; class User { X x; }", "c/User.java"),
      unit("package c; class Y { class X {} X inner; }", "c/Y.java"),
  });
  const TypeInfo* user = t.find_type("c.User");
  const auto& ref = *user->decl->members[0].field_type;
  EXPECT_EQ(t.resolve(ref, t.context_for(*user)).name, "b.X");
  const TypeInfo* y = t.find_type("c.Y");
  EXPECT_EQ(t.resolve(*y->decl->members[0].field_type, t.context_for(*y)).name, "c.Y.X");
}

TEST(SymbolTable, ComputesBreadthFirstSupertypeClosure) {
  const SymbolTable t = build_symbol_table(
      {unit("package p; interface I {} interface J extends I {} class A implements I {} class B extends A implements J {}")});
  EXPECT_EQ(t.supertype_closure("p.B"), (std::vector<std::string>{"p.A", "p.J", "p.I"}));
  EXPECT_TRUE(t.is_subtype("p.B", "p.I"));
  EXPECT_FALSE(t.is_subtype("p.A", "p.J"));
}

// --- binder ----------------------------------------------------------------

const ExprBinding* call_binding(const BoundUnit& bound, const std::string& name) {
  for (const Expr* e : bound.exprs)
    if (const auto* c = e->as<CallExpr>(); c && c->name == name) return bound.binding(*e);
  return nullptr;
}

TEST(Binder, PicksMostSpecificOverload) {
  const Lib lib = library_at("jdk");
  const auto client = unit("class C { void f() { String.valueOf(42); String.valueOf(42L); } }");
  const SymbolTable t = overlay_symbol_table(lib.table, {client});
  const BoundUnit bound = bind_unit(*client, t);
  std::vector<std::string> sigs;
  for (const Expr* e : bound.exprs)
    if (e->as<CallExpr>()) sigs.push_back(bound.binding(*e)->member->signature);
  EXPECT_EQ(sigs, (std::vector<std::string>{"valueOf(int)", "valueOf(long)"}));
  EXPECT_TRUE(call_binding(bound, "valueOf")->qualified_by_type);
  EXPECT_TRUE(bound.diagnostics.empty());
}

TEST(Binder, TypesLiteralsLocalsAndChains) {
  const Lib lib = library_at("jdk");
  const auto client = unit("class C { int f(String s) { Integer i = new Integer(1); return s.length() + i.intValue(); } }");
  const SymbolTable t = overlay_symbol_table(lib.table, {client});
  const BoundUnit bound = bind_unit(*client, t);
  const ExprBinding* length = call_binding(bound, "length");
  ASSERT_NE(length, nullptr);
  EXPECT_EQ(length->receiver, "java.lang.String");
  EXPECT_EQ(length->type, StaticType{"int"});
  EXPECT_EQ(call_binding(bound, "intValue")->receiver, "java.lang.Integer");

  Environment env;
  env.self = t.find_type("C");
  EXPECT_EQ(static_type_of(*parse_unit("class Z { Object o = \"a\"; }", "Z.java").types[0].members[0].initializer,
                           env, t),
            StaticType{"java.lang.String"});
}

TEST(Binder, RecordsUnresolvedCallsAsDiagnostics) {
  const Lib lib = library_at("jdk");
  const auto client = unit("class C { void f(String s) { s.nosuch(); } }");
  const SymbolTable t = overlay_symbol_table(lib.table, {client});
  const BoundUnit bound = bind_unit(*client, t);
  ASSERT_EQ(bound.diagnostics.size(), 1u);
  EXPECT_EQ(bound.diagnostics[0].kind, DiagnosticKind::Unresolved);
  EXPECT_EQ(bound.diagnostics[0].location.line, 1);
  EXPECT_EQ(call_binding(bound, "nosuch")->status, ResolutionStatus::Unresolved);
}

TEST(Binder, TargetTypesLambdasToTheFunctionalMethod) {
  const Lib lib = library_at("jdk");
  const auto client = unit("class C { void f() { Runnable r = () -> {}; } }");
  const SymbolTable t = overlay_symbol_table(lib.table, {client});
  const BoundUnit bound = bind_unit(*client, t);
  const ExprBinding* lambda = nullptr;
  for (const Expr* e : bound.exprs)
    if (e->as<LambdaExpr>()) lambda = bound.binding(*e);
  ASSERT_NE(lambda, nullptr);
  ASSERT_NE(lambda->lambda_interface, nullptr);
  EXPECT_EQ(lambda->lambda_interface->fqn, "java.lang.Runnable");
  EXPECT_EQ(lambda->lambda_method->signature, "run()");
  EXPECT_EQ(functional_method(t, "java.lang.Thread"), nullptr);
}

}  // namespace
}  // namespace ucov::testing
