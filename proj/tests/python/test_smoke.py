import math

import pytest

import tolspace as ts


@pytest.fixture
def two_block():
    return ts.ToleranceSpace.from_edges(["a0", "a1", "b0", "b1"], [(0, 1), (2, 3)])


def test_closure_and_wellposed(two_block):
    part = ts.transitive_closure(two_block)
    assert len(part) == 2
    assert part.class_index == [0, 0, 1, 1]
    assert ts.well_posed(two_block, 3)["well_posed"] is False
    assert ts.well_posed(two_block, 2)["regular_classifier_count"] == 1


def test_stirling_is_a_python_int():
    assert ts.stirling2(30, 5) == 7713000216608565075
    assert ts.stirling2(4, 2) == 7


def test_audit_everywhere_ambiguous(two_block):
    r = ts.Classifier([1, 2, 1, 2], 2)
    rep = ts.audit(two_block, r)
    assert rep["regular"] is False
    assert rep["adversarial_pairs"] == [(0, 1), (2, 3)]
    assert rep["entropy"] == [1.0, 1.0, 1.0, 1.0]
    target, unattackable = ts.max_fooling_attack(two_block, r)
    assert unattackable == []
    assert ts.fooling_rate(two_block, r, target) == 1.0


def test_enumerate_and_sorites(two_block):
    assert ts.enumerate_regular(two_block, 2) == [[1, 1, 2, 2]]
    assert len(ts.enumerate_regular(two_block, 2, labeled=True)) == 2
    r = ts.Classifier([1, 2, 1, 1], 2)
    assert ts.sorites_extract(two_block, [0, 1], r, "last") == (0, 1)


def test_metric_and_laplacians(two_block):
    assert ts.graph_distance(two_block, 0, 2) is None
    assert ts.perceptual_distance(two_block, 0, 1) == 0.5
    assert ts.perceptual_distance(two_block, 0, 2) == 1.0
    assert ts.laplacian_sigma(two_block, [1, 1, 5, 5]) == [0, 0, 0, 0]
    spec = ts.laplacian_spectrum(two_block, "sigma")
    assert all(min(abs(v), abs(v - 1)) < 1e-9 for v in spec)
    kern = ts.laplacian_ad(two_block, ts.sqrt_degree(two_block))
    assert max(abs(v) for v in kern) < 1e-12


def test_dfr(two_block):
    rep = ts.clique_dfr(two_block)
    assert ts.is_dfr(rep, two_block) == (True, None)
    refined = ts.refine(rep, two_block)
    assert ts.is_dfr(refined, two_block)[0]
    blocks = ts.FeatureRepresentation(["A", "B"], [[0], [0], [1], [1]])
    x, y, f = ts.finite_dfr_witness(blocks, two_block, ts.Classifier([1, 2, 3, 3], 3))
    assert two_block.related(x, y) and f == 0


def test_weber_oracles():
    assert abs(ts.ambiguity_bound(1.2, 1.0) - (math.erf(1.2) - math.erf(1 / 1.2))) < 1e-14
    ray = ts.make_weber_ray_gaussian(1.2, 1.0)
    assert abs(ts.fooling_bound(ray.space, ray.classifier) - 0.148906807546071) < 1e-9
    kl = ts.make_kline_gaussian(1.2, 1.0)
    assert abs(ts.accuracy(kl.space, kl.world, kl.classifier) - (1 - math.erf(1) / 2)) < 1e-9
    eps_star, _ = ts.kline_mass_maximizer(1.2)
    w = 1.2
    assert abs(eps_star - math.sqrt(math.log(w) / (1 - 1 / w**2))) < 1e-6
    space, coords = ts.make_weber_interval(1.0, 3.0, 1.4, 1.5)
    assert len(ts.transitive_closure(space)) == 1
    assert coords[0] == 1.0 and coords[-1] == 3.0


def test_accuracy_checks(two_block):
    world = ts.WorldModel(two_block, [1, 1, 2, 2], 2)
    r = ts.Classifier([1, 2, 2, 2], 2)
    assert ts.recall_rates(two_block, world, r) == [0.5, 1.0]
    assert ts.k_bar(two_block, world) == 1.0
    chk = ts.check_hypersensitivity(two_block, world, r)
    assert chk["verdict"] == "holds"
    assert ts.is_hyper_sensitive(two_block, world, r)


def test_category(two_block):
    rep = ts.FeatureRepresentation(["A", "B"], [[0], [0], [1], [1]])
    model = ts.TverskyModel(0.5, 0.25, 1.0, [2.0, 1.0], rep)
    D = [0, 1, 2, 3]
    brute = sum(two_block.probability(y) * model.similarity(0, y) for y in D)
    assert abs(ts.tversky_affinity_closed_form(model, two_block, 0, D) - brute) < 1e-12
    assert ts.prototypes(two_block, model.scale(), D) == [0, 1]
    assert ts.structural_entropy(two_block, D) == pytest.approx(1.0)
    assert ts.index_of_coincidence(two_block, D) == pytest.approx(0.5)


def test_errors_are_typed(two_block):
    with pytest.raises(ts.ValidationError):
        ts.Classifier([3], 2)
    with pytest.raises(ts.PreconditionError):
        ts.sorites_extract(two_block, [0, 1], ts.Classifier([1, 1, 2, 2], 2))
    with pytest.raises(ts.GuardExceeded):
        ts.laplacian_spectrum(two_block, "sigma", max_points=2)
    assert issubclass(ts.InvariantViolation, ts.Error)
