from cpl.morphism import ID, Comp, Fact, Nat, comp, factors, format_canonical, format_expr, subterms

S, Z = Nat("s"), Nat("0")


def test_comp_flattens_and_drops_identities():
    assert comp() == ID
    assert comp(ID, S, ID) == S
    assert comp(comp(S, S), comp(ID, Z)) == Comp((S, S, Z))
    assert factors(ID) == () and factors(S) == (S,)


def test_formatting():
    assert format_expr(ID) == "id"
    assert format_expr(comp(Fact("pair", (comp(S, Z), Fact("!"))), Z)) == "pair(s.0,!).0"
    assert format_canonical(()) == "id"
    assert format_canonical((), "") == ""
    assert format_canonical((S, Z)) == "s.0"


def test_subterms():
    e = comp(Fact("pair", (S, Z)), Z)
    assert S in list(subterms(e))
