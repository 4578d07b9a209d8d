import os

import pytest

from ydhalg.abgroup import FinAbGroup
from ydhalg.catalog import (DUAL_GROUP_ALGEBRA, GROUP_ALGEBRA, BudgetSpec,
                            SearchConfig, search_nontrivial,
                            standard_catalog, trivial_instances)
from ydhalg.commalg import analyze, primitive_idempotents
from ydhalg.integrals import compute_integrals
from ydhalg.ydhio import algebra_to_document, render_document
from ydhalg.ydhopf import is_trivial, verify_axioms

G2 = FinAbGroup([2])


def test_trivial_instances_examples():
    a = trivial_instances(FinAbGroup([3]), GROUP_ALGEBRA, G2)
    assert a.dim == 3
    assert verify_axioms(a).passed
    assert is_trivial(a)[0]
    a = trivial_instances(FinAbGroup([2, 2]), DUAL_GROUP_ALGEBRA, G2)
    assert a.dim == 4
    an = primitive_idempotents(a)
    assert all(rec.index_value == 1 for rec in an.records)
    a = trivial_instances(FinAbGroup([]), GROUP_ALGEBRA, G2)
    assert a.dim == 1
    pair = compute_integrals(a)
    assert pair.element == a.unit


def test_standard_catalog_size(catalog):
    assert len(catalog) == 30
    labels = {a.label for a in catalog}
    assert len(labels) == 30


def test_budget_values_deterministic():
    b = BudgetSpec(1, 2, 4)
    v1 = [str(x) for x in b.values(4)]
    v2 = [str(x) for x in b.values(4)]
    assert v1 == v2
    assert "0" in v1 and "1" in v1


def test_search_dim2_only_trivial():
    out = search_nontrivial(SearchConfig(G2, 2))
    assert not out.pruned
    assert out.instances and not out.nontrivial()


def test_search_dim3_prunes_and_confirms():
    pruned = search_nontrivial(SearchConfig(G2, 3))
    assert pruned.pruned and not pruned.instances
    confirmed = search_nontrivial(SearchConfig(G2, 3, confirm_prune=True))
    assert not confirmed.pruned
    assert confirmed.instances and not confirmed.nontrivial()
    # every emitted instance is fully verified and trivial
    for inst, trivial in confirmed.instances:
        assert trivial
        assert verify_axioms(inst).passed


def test_search_dim4_finds_the_fixture_family(nontrivial):
    # restricted to the fixture's own action shape for speed; the full run
    # is exercised by the acceptance suite
    ansatz = [(((0, 1, 3, 2),), ((0, 1, 3, 2),))]
    out = search_nontrivial(SearchConfig(G2, 4, action_ansatz=ansatz))
    found = out.nontrivial()
    assert len(found) == 2
    rendered = {render_document(algebra_to_document(a)) for a in found}
    fixture_doc = render_document(algebra_to_document(nontrivial))
    # the persisted fixture has a different label line; compare bodies
    def body(text):
        return "\n".join(l for l in text.splitlines()
                         if not l.startswith("label"))
    assert body(fixture_doc) in {body(t) for t in rendered}


def test_search_results_satisfy_theorem_constraints():
    ansatz = [(((0, 2, 1, 3),), ((0, 2, 1, 3),))]
    out = search_nontrivial(SearchConfig(G2, 4, action_ansatz=ansatz))
    for inst, trivial in out.instances:
        if trivial:
            continue
        from math import gcd
        assert gcd(inst.dim, inst.group.order) > 1
        an = primitive_idempotents(inst)
        indices = [rec.index_value for rec in an.records]
        assert any(ix > 1 for ix in indices)
        assert all(inst.dim % ix == 0 for ix in indices)


def test_search_deterministic():
    cfg1 = SearchConfig(G2, 2)
    cfg2 = SearchConfig(G2, 2)
    out1 = search_nontrivial(cfg1)
    out2 = search_nontrivial(cfg2)
    texts1 = [render_document(algebra_to_document(a))
              for a, _ in out1.instances]
    texts2 = [render_document(algebra_to_document(a))
              for a, _ in out2.instances]
    assert texts1 == texts2


def test_search_emits_passing_instances_only():
    out = search_nontrivial(SearchConfig(G2, 2))
    for inst, _ in out.instances:
        result = analyze(inst)
        assert result.passed
