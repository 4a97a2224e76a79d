import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import read_fixture
from helpers import implies, truth_table_entails
from reqconflict.analysis import (
    CONTRADICTION,
    OK,
    AnalysisOptions,
    DerivedRequirement,
    RequirementPair,
    analyze_corpus,
    check_pair,
    derive_syllogisms,
    find_pairs,
)
from reqconflict.encoder import EncodedRequirement, encode_corpus
from reqconflict.logic import And, Atom, Not, Or, Var, brute_force_sat, evaluate, to_notation
from reqconflict.parser import parse_requirements


def lit(name):
    return Not(Var(name[1:])) if name.startswith("~") else Var(name)


def req(rid, antecedent, consequent):
    atoms = []

    def collect(e, positive=True):
        if isinstance(e, Var):
            atoms.append((e.name, positive))
        elif isinstance(e, Not):
            collect(e.child, not positive)
        else:
            for c in e.children:
                collect(c, positive)

    collect(consequent)
    return EncodedRequirement(rid, antecedent, consequent, frozenset(atoms))


def corpus(name, dictionary, lenient=False):
    encoded, symbols, _ = encode_corpus(parse_requirements(read_fixture(name)), dictionary, lenient=lenient)
    return {r.id: r for r in encoded}, symbols


def test_pairs_on_shared_operations(dictionary):
    reqs, _ = corpus("nested_pair.req", dictionary)
    [pair] = find_pairs(list(reqs.values()))
    assert (pair.left.id, pair.right.id) == ("Req1", "Req2")
    assert pair.shared_operation_atoms == {Atom("TPoint", "TKPoint"), Atom("MODE", "LockMode")}


def test_single_shared_operation_is_enough(dictionary):
    reqs, _ = corpus("review_sample.req", dictionary, lenient=True)
    pair = next(p for p in find_pairs(list(reqs.values())) if (p.left.id, p.right.id) == ("Gherkin_1", "Gherkin_7"))
    assert pair.shared_operation_atoms == {Atom("MMM", "NAV")}
    assert len(pair.right.operation_atoms) == 2


def test_disjoint_operations_not_paired(dictionary):
    reqs, _ = corpus("disjoint.req", dictionary)
    assert find_pairs(list(reqs.values())) == []


def test_pairing_ignores_polarity():
    r1 = req("R1", Var("a"), Var("q"))
    r2 = req("R2", Var("b"), Not(Var("q")))
    assert len(find_pairs([r2, r1])) == 1


def test_pairs_are_sorted_and_self_pairs_skipped():
    reqs = [req(i, Var("a"), Var("q")) for i in ("c", "a", "b")]
    assert [(p.left.id, p.right.id) for p in find_pairs(reqs)] == [("a", "b"), ("a", "c"), ("b", "c")]


def test_check_pair_contradiction(dictionary):
    reqs, _ = corpus("review_sample.req", dictionary, lenient=True)
    pair = RequirementPair(reqs["Gherkin_1"], reqs["Gherkin_7"], frozenset({Atom("MMM", "NAV")}))
    verdict = check_pair(pair)
    assert verdict.result == CONTRADICTION
    assert verdict.model is None
    assert verdict.inference.kind == "direct"


def test_check_pair_disjoint_conditions_ok(dictionary):
    reqs, _ = corpus("review_sample.req", dictionary, lenient=True)
    verdict = check_pair(RequirementPair(reqs["Gherkin_1"], reqs["Gherkin_4"], frozenset()))
    assert verdict.result == OK


def test_nested_pair_is_satisfiable(dictionary):
    reqs, symbols = corpus("nested_pair.req", dictionary)
    pair = RequirementPair(reqs["Req1"], reqs["Req2"], frozenset())
    verdict = check_pair(pair)
    assert verdict.result == OK
    by_letter = {symbols.get(a): v for a, v in verdict.model.items()}
    assert by_letter == {"A": True, "B": True, "C": False}
    conj = And((reqs["Req1"].antecedent, reqs["Req2"].antecedent))
    assert brute_force_sat(conj).satisfiable


def test_domain_axioms_make_enum_values_exclusive(dictionary):
    text = "ID:R1\nGiven MMM is SJ\nThen SET Fan to ON\n\nID:R2\nGiven MMM is NAV\nThen SET Fan to ON\n"
    encoded, _, _ = encode_corpus(parse_requirements(text), dictionary)
    _, plain = analyze_corpus(encoded, AnalysisOptions(domain_axioms=False), dictionary)
    _, axioms = analyze_corpus(encoded, AnalysisOptions(domain_axioms=True), dictionary)
    assert [c.verdict.result for c in plain] == [OK]
    assert [c.verdict.result for c in axioms] == [CONTRADICTION]


# -- syllogism -------------------------------------------------------------------


def test_syllogism_basic():
    r1 = req("r1", Var("A"), Var("q"))
    r2 = req("r2", Var("q"), Var("t"))
    [d] = derive_syllogisms([r1, r2], 1)
    assert d.chain == ("r1", "r2")
    assert d.antecedent == Var("A") and d.consequent == Var("t")
    assert d.id == "derived:r1+r2"


def test_syllogism_removes_matched_conjunct():
    r1 = req("r1", Var("A"), Var("q"))
    r2 = req("r2", And((Var("q"), Var("S"))), Var("t"))
    [d] = derive_syllogisms([r1, r2], 1)
    assert d.antecedent == And((Var("A"), Var("S")))
    assert truth_table_entails([implies(r1.antecedent, r1.consequent), implies(r2.antecedent, r2.consequent)],
                               implies(d.antecedent, d.consequent))


def test_syllogism_requires_conjunct():
    r1 = req("r1", Var("A"), Var("q"))
    r2 = req("r2", Or((Var("q"), Var("S"))), Var("t"))
    assert derive_syllogisms([r1, r2], 1) == []


def test_syllogism_requires_forced_operation():
    r1 = req("r1", Var("A"), Or((Var("q"), Var("z"))))
    r1n = req("r1n", Var("A"), Not(Var("q")))
    r2 = req("r2", Var("q"), Var("t"))
    assert derive_syllogisms([r1, r1n, r2], 1) == []


def test_syllogism_depth_and_cycle_guard():
    r1 = req("r1", Var("A"), Var("q"))
    r2 = req("r2", Var("q"), Var("s"))
    r3 = req("r3", Var("s"), Var("q"))
    d1 = derive_syllogisms([r1, r2, r3], 1)
    d2 = derive_syllogisms([r1, r2, r3], 2)
    d5 = derive_syllogisms([r1, r2, r3], 5)
    assert {d.chain for d in d1} == {("r1", "r2"), ("r2", "r3"), ("r3", "r2")}
    assert {d.chain for d in d2} - {d.chain for d in d1} == {("r1", "r2", "r3")}
    assert d5 == d2
    assert all(len(set(d.chain)) == len(d.chain) for d in d5)
    assert derive_syllogisms([r1, r2], 0) == []


def test_desk_set_found_only_by_syllogism(dictionary):
    encoded, symbols, _ = encode_corpus(parse_requirements(read_fixture("syllogism.req")), dictionary)
    _, with_rule = analyze_corpus(encoded, AnalysisOptions(syllogism_depth=1))
    _, without = analyze_corpus(encoded, AnalysisOptions(syllogism_depth=0))
    bad = [c for c in with_rule if c.verdict.result == CONTRADICTION]
    assert len(bad) == 1
    assert bad[0].verdict.inference.kind == "syllogism"
    assert bad[0].verdict.inference.chain == ("SYL_1", "SYL_2")
    assert to_notation(And((bad[0].pair.left.antecedent, bad[0].pair.right.antecedent)), symbols.name) == "And(Not(A), A)"
    assert [c.verdict.result for c in without] == [OK]


def test_review_sample_order(dictionary):
    reqs, _ = corpus("review_sample.req", dictionary, lenient=True)
    _, comparisons = analyze_corpus(list(reqs.values()), AnalysisOptions())
    first = [c for c in comparisons if c.pair.left.id == "Gherkin_1"]
    assert [c.pair.right.id for c in first] == ["Gherkin_4", "Gherkin_6", "Gherkin_7", "Gherkin_8"]
    assert [c.verdict.result for c in first] == [OK, OK, CONTRADICTION, OK]


def test_nothing_shared_nothing_compared(dictionary):
    reqs, _ = corpus("disjoint.req", dictionary)
    assert analyze_corpus(list(reqs.values()))[1] == []


def test_options_validate_depth():
    with pytest.raises(ValueError):
        AnalysisOptions(syllogism_depth=9)


# -- properties over random corpora ----------------------------------------------

COND = ["a", "b", "c", "q", "s"]
OPS = ["q", "s", "t"]


def _expr(names):
    leaf = st.sampled_from(names + ["~" + n for n in names]).map(lit)
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            st.lists(kids, min_size=2, max_size=3).map(lambda k: And(tuple(k))),
            st.lists(kids, min_size=2, max_size=3).map(lambda k: Or(tuple(k))),
        ),
        max_leaves=4,
    )


_cons = st.lists(st.sampled_from(OPS + ["~" + o for o in OPS]), min_size=1, max_size=2, unique=True).map(
    lambda names: lit(names[0]) if len(names) == 1 else And(tuple(map(lit, names)))
)

corpora = st.lists(st.tuples(_expr(COND), _cons), min_size=1, max_size=5).map(
    lambda rows: [req(f"R{i}", a, c) for i, (a, c) in enumerate(rows)]
)


@settings(max_examples=150, deadline=None)
@given(corpora)
def test_verdict_properties(reqs):
    pool, comparisons = analyze_corpus(reqs, AnalysisOptions(syllogism_depth=2))
    ids = {r.id for r in pool}
    for c in comparisons:
        left, right = c.pair.left, c.pair.right
        assert left.id in ids and right.id in ids
        conj = And((left.antecedent, right.antecedent))
        oracle = brute_force_sat(conj)
        assert (c.verdict.result == CONTRADICTION) == (not oracle.satisfiable)
        if c.verdict.result == OK:
            assert evaluate(left.antecedent, c.verdict.model) and evaluate(right.antecedent, c.verdict.model)
        swapped = check_pair(RequirementPair(right, left, c.pair.shared_operation_atoms))
        assert swapped.result == c.verdict.result
        is_derived = isinstance(left, DerivedRequirement) or isinstance(right, DerivedRequirement)
        assert (c.verdict.inference.kind == "syllogism") == is_derived


@settings(max_examples=150, deadline=None)
@given(corpora)
def test_syllogism_soundness(reqs):
    by_id = {r.id: r for r in reqs}
    for d in derive_syllogisms(reqs, 3):
        premises = [implies(by_id[i].antecedent, by_id[i].consequent) for i in d.chain]
        assert truth_table_entails(premises, implies(d.antecedent, d.consequent))


@settings(max_examples=100, deadline=None)
@given(corpora, corpora)
def test_pairing_is_monotone(first, extra):
    extra = [req("X" + r.id, r.antecedent, r.consequent) for r in extra]
    before = {(p.left.id, p.right.id) for p in find_pairs(first)}
    after = {(p.left.id, p.right.id) for p in find_pairs(first + extra)}
    assert before <= after


@settings(max_examples=100, deadline=None)
@given(corpora)
def test_results_are_order_independent(reqs):
    a = analyze_corpus(reqs)[1]
    b = analyze_corpus(list(reversed(reqs)))[1]
    assert [(c.pair.left.id, c.pair.right.id, c.verdict.result) for c in a] == [
        (c.pair.left.id, c.pair.right.id, c.verdict.result) for c in b
    ]
