#include <doctest.h>

#include <algorithm>

#include "dlal/constraints.hpp"
#include "dlal/encodings.hpp"

using namespace dlal;

namespace {

bool has(const ConstraintStore& s, const std::string& atom, const std::string& rule = "") {
    for (const auto* c : s.ordered())
        if (to_string(c->atom) == atom && (rule.empty() || c->rule == rule)) return true;
    return false;
}

bool has(const std::vector<Constraint>& cs, const std::string& atom) {
    return std::any_of(cs.begin(), cs.end(), [&](const Constraint& c) { return to_string(c.atom) == atom; });
}

LinearPType lin(IntParam p, PSkelPtr s) { return {LinComb(p), std::move(s)}; }

}  // namespace

TEST_CASE("atoms normalize and print") {
    IntParam m{1, true}, n{2, false};
    BoolParam b{1};
    CHECK(to_string(Atom::mixed(b, LinComb(m) + LinComb(n))) == "b1 = 1 => m1 + n2 >= 1");
    CHECK(is_tautology(Atom::lin_geq(LinComb(), 0)));
    CHECK_FALSE(is_tautology(Atom::lin_geq(LinComb(), 1)));
    CHECK(is_tautology(Atom::lin_eq(LinComb(m) + LinComb(n), LinComb(n) + LinComb(m))));
    Atom e = normalize(Atom::lin_eq(LinComb(n) + LinComb(m), LinComb(n)));
    CHECK(to_string(e) == "0 = m1");
    CHECK(class_of(Atom::bool_impl(b, BoolParam{2})) == AtomClass::Boolean);
    CHECK(class_of(Atom::lin_eq0(LinComb(m))) == AtomClass::Linear);
    CHECK(class_of(Atom::mixed(b, LinComb(m))) == AtomClass::Mixed);

    Instantiation phi;
    phi.integers[m] = 2;
    phi.integers[n] = -1;
    CHECK(holds(Atom::lin_geq(LinComb(m) + LinComb(n), 1), phi));
    CHECK_FALSE(holds(Atom::mixed(b, LinComb(n)), Instantiation{{{b, true}}, {{n, 0}}}));
    CHECK(holds(Atom::mixed(b, LinComb(n)), phi));
}

TEST_CASE("unification") {
    ParamPool pool;
    IntParam c1 = pool.fresh_type(), c2 = pool.fresh_type(), c3 = pool.fresh_type(), c4 = pool.fresh_type();
    BoolParam b1 = pool.fresh_bool(), b2 = pool.fresh_bool();

    auto empty = unify(PSkel::var("a"), PSkel::var("a"));
    REQUIRE(empty);
    CHECK(empty->empty());

    auto one = unify(lin(c1, PSkel::var("a")), lin(c2, PSkel::var("a")));
    REQUIRE(one);
    REQUIRE(one->size() == 1);
    CHECK(to_string((*one)[0]) == "n1 = n2");

    LinearPType arrow = lin(c2, PSkel::arrow(BangPType{b1, LinComb(c3), PSkel::var("a")}, lin(c4, PSkel::var("a"))));
    CHECK_FALSE(unify(lin(c1, PSkel::var("a")), arrow));

    LinearPType arrow2 = lin(c1, PSkel::arrow(BangPType{b2, LinComb(c1), PSkel::var("a")}, lin(c1, PSkel::var("a"))));
    auto two = unify(arrow, arrow2);
    REQUIRE(two);
    CHECK(two->size() == 4);
    CHECK(std::count(two->begin(), two->end(), Atom::bool_eq(b1, b2)) == 1);

    LinearPType fa = lin(c1, PSkel::forall("x", lin(c2, PSkel::var("x"))));
    LinearPType fb = lin(c3, PSkel::forall("y", lin(c4, PSkel::var("y"))));
    auto three = unify(fa, fb);
    REQUIRE(three);
    CHECK(three->size() == 2);
    LinearPType fc = lin(c3, PSkel::forall("y", lin(c4, PSkel::var("x"))));
    CHECK_FALSE(unify(fa, fc));
}

TEST_CASE("admissibility atoms") {
    ParamPool pool;
    IntParam c = pool.fresh_type();
    BoolParam b = pool.fresh_bool();
    CHECK(admissibility(lin(c, PSkel::var("a"))).size() == 1);
    auto bang = admissibility(BangPType{b, LinComb(c), PSkel::var("a")});
    REQUIRE(bang.size() == 2);
    CHECK(to_string(bang[0]) == "n1 >= 0");
    CHECK(to_string(bang[1]) == "b1 = 1 => n1 >= 1");

    FTypePtr t = parse_type("(a -> a) -> (a -> a)");
    auto atoms = admissibility(linear_free_decoration(t, pool));
    auto geq = std::count_if(atoms.begin(), atoms.end(), [](const Atom& a) { return a.kind == Atom::Kind::LinGeq; });
    auto mixed = std::count_if(atoms.begin(), atoms.end(), [](const Atom& a) { return a.kind == Atom::Kind::Mixed; });
    // Linear nodes: the whole type, both codomains a and the result a -> a;
    // bang nodes: the argument a -> a and the two domains a.
    CHECK(geq == 4 + 3);
    CHECK(mixed == 3);
}

TEST_CASE("local typing of the identity") {
    ParamPool pool;
    LocalTyping lt = local_typing(free_decoration(parse_term("\\x:a. x"), pool));
    CHECK(to_string(lt.typed.conclusion()) == "{m1}({b1,n2}a -o {n2 + m3}a)");
    CHECK(has(lt.constraints, "m1 >= 0"));
    CHECK(has(lt.constraints, "n2 + m3 >= 0"));
    CHECK(has(lt.constraints, "n2 >= 0"));
    CHECK(has(lt.constraints, "b1 = 1 => n2 >= 1"));
}

TEST_CASE("local typing of repeated variables and type application") {
    ParamPool pool;
    LocalTyping lt = local_typing(free_decoration(parse_term("\\f:a -> a -> a. \\x:a. f x x"), pool));
    const PTerm& t = lt.typed.term;
    BoolParam bx = t.variables().at("x").b;
    BoolParam bf = t.variables().at("f").b;
    CHECK(has(lt.constraints, to_string(Atom::bool_const(bx, true))));
    CHECK_FALSE(has(lt.constraints, to_string(Atom::bool_const(bf, true))));

    ParamPool pool2;
    PTerm p = free_decoration(parse_term("(/\\a. \\z:a. z) [b]"), pool2, {});
    NodeId tapp = p.node(p.root()).child[0];
    IntParam outer = p.node(p.node(tapp).child[0]).door;
    LocalTyping lt2 = local_typing(std::move(p));
    auto it = std::find_if(lt2.constraints.begin(), lt2.constraints.end(),
                           [&](const Constraint& c) { return c.atom == Atom::lin_eq0(LinComb(outer)); });
    REQUIRE(it != lt2.constraints.end());
    CHECK(it->rule == "ltype:tapp");
    CHECK(to_string(it->path) == "0");
    // The conclusion is b's identity, with the argument's combination added
    // at each former occurrence of a.
    CHECK(alpha_equal(erase(lt2.typed.conclusion()), parse_type("b -> b")));
}

TEST_CASE("door words") {
    ParamPool pool;
    PTerm t = free_decoration(parse_term("\\x:a. x"), pool);
    NodeId x = t.at({0, 0, 0});
    CHECK(doors(t, t.root(), t.root()).empty());
    auto w = doors(t, t.root(), x);
    REQUIRE(w.size() == 2);
    CHECK(to_string(w[0]) == "m1");
    CHECK(to_string(w[1]) == "m3");
    CHECK_THROWS_AS(doors(t, x, t.root()), std::out_of_range);

    ParamPool pool2;
    PTerm a = free_decoration(parse_term("f y"), pool2, {{"f", parse_type("a -> a")}, {"y", parse_type("a")}});
    NodeId app = a.node(a.root()).child[0];
    NodeId arg = a.node(app).child[1];
    NodeId y = a.node(arg).child[0];
    CHECK(doors(a, a.root(), y) == std::vector<IntParam>{a.node(a.root()).door, a.node(arg).door});
    CHECK(doors(a, arg, y) == std::vector<IntParam>{a.node(arg).door});

    IntParam m{1, true}, n{2, true};
    CHECK(lsum({}).is_zero());
    CHECK(to_string(lsum({m})) == "m1");
    CHECK(lsum({m, n, m}).terms().at(m) == 2);
    CHECK(wbracket({m, n}).size() == 2);
    CHECK(bracket({m, n}).size() == 3);
    CHECK(bracket({}).size() == 1);
}

TEST_CASE("bracketing atoms") {
    Generated g = gen_all(parse_term("\\x:a. x"));
    auto br = gen_bracketing(g.typed);
    CHECK(br.size() == 3);
    CHECK(has(br, "m3 >= 0"));
    CHECK(has(br, "m3 = 0"));
    CHECK(has(br, "m1 >= 0"));

    Generated open = gen_all(parse_term("x"), {{"x", parse_type("a")}});
    CHECK(has(open.store, "m1 >= 0", ""));
    CHECK(has(open.store, "m1 = 0", "bracket:i"));
}

TEST_CASE("bang atoms") {
    Generated two = gen_all(parse_term("\\g:(a -> a) -> a. \\f:a -> a -> a. \\x:a. g (f x)"));
    BoolParam crit = two.typed.term.variables().at("g").skel->dom.b;
    CHECK(has(two.store, to_string(Atom::bool_const(crit, false)), "bang:i"));

    Generated one = gen_all(parse_term("\\g:a -> a. \\x:a. g x"));
    const PTerm& t = one.typed.term;
    BoolParam b = t.variables().at("g").skel->dom.b;
    BoolParam bx = t.variables().at("x").b;
    CHECK(has(one.store, to_string(Atom::bool_impl(b, bx)), "bang:i"));
    auto bang = gen_bang(one.typed);
    // u = §^m x: no strictly inner non-x subterm, plus the chain atom m >= 0.
    REQUIRE(bang.size() == 2);
    CHECK(bang[1].rule == "bang:x");
    CHECK(bang[1].atom.k == 0);

    Generated closed = gen_all(parse_term("\\g:(a -> a) -> a. g (\\y:a. y)"));
    auto cb = gen_bang(closed.typed);
    // u = §^m1 \y. §^m2 y: v ranges over the abstraction, the inner door and y.
    auto ii = std::count_if(cb.begin(), cb.end(), [](const Constraint& c) { return c.rule == "bang:ii"; });
    CHECK(ii == 3);
    CHECK(std::none_of(cb.begin(), cb.end(), [](const Constraint& c) { return c.rule == "bang:i"; }));
}

TEST_CASE("scope atoms") {
    Generated g = gen_all(parse_term("/\\a. \\z:a. z"));
    auto sc = gen_scope(g.typed);
    CHECK(has(sc, "m2 >= 0"));
    CHECK(has(sc, "m2 + m4 >= 0"));

    Generated none = gen_all(parse_term("/\\a. \\z:b. z"), {});
    CHECK(gen_scope(none.typed).empty());

    // The Barcan-shaped decoration: a door on the type abstraction closed by
    // an auxiliary door on the dependent application.
    Generated t2 = gen_all(parse_term("\\x:forall a. a. /\\a. x [a]"));
    const PTerm& t = t2.typed.term;
    NodeId tlam_door = t.at({0, 0});
    NodeId tapp_door = t.at({0, 0, 0, 0});
    REQUIRE(t.node(tlam_door).kind == PNode::Kind::Door);
    REQUIRE(t.node(t.node(tapp_door).child[0]).kind == PNode::Kind::TApp);
    Instantiation phi;
    phi.integers[t.node(tlam_door).door] = 1;
    phi.integers[t.node(tapp_door).door] = -1;
    bool scope_violated = false;
    for (const auto& c : gen_scope(t2.typed)) scope_violated |= !holds(c.atom, phi);
    CHECK(scope_violated);
}

TEST_CASE("dump of the identity store") {
    Generated g = gen_all(parse_term("\\x:a. x"));
    CHECK(dump(g.store) ==
          "L | m1 >= 0 | ltype:door | e\n"
          "L | n2 + m3 >= 0 | ltype:door | 0.0\n"
          "L | n2 >= 0 | ltype:var | 0.0.0\n"
          "M | b1 = 1 => n2 >= 1 | ltype:var | 0.0.0\n"
          "L | m3 >= 0 | bracket:iii | 0.0.0\n"
          "L | m3 = 0 | bracket:iii | 0.0.0\n");
    CHECK(g.store.boolean().empty());
    CHECK(g.store.linear().size() == 5);
    CHECK(g.store.mixed().size() == 1);
}

TEST_CASE("partition and determinism") {
    for (const auto& e : encodings::corpus()) {
        Generated a = gen_all(e.term);
        Generated b = gen_all(e.term);
        CHECK_MESSAGE(dump(a.store) == dump(b.store), e.name);
        for (const auto& c : a.store.boolean()) CHECK(class_of(c.atom) == AtomClass::Boolean);
        for (const auto& c : a.store.linear()) CHECK(class_of(c.atom) == AtomClass::Linear);
        for (const auto& c : a.store.mixed()) {
            CHECK(class_of(c.atom) == AtomClass::Mixed);
            CHECK((c.rule.rfind("ltype", 0) == 0 || c.rule.rfind("bang", 0) == 0));
        }
    }
}

TEST_CASE("rev(1010) store size") {
    Generated g = gen_all(encodings::rev_applied("1010"));
    MESSAGE("rev(1010): " << g.store.size() << " atoms over " << g.store.int_params().size() + g.store.bool_params().size()
                          << " parameters");
    CHECK(g.store.size() > 0);
}
