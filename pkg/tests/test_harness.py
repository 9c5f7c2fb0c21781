import json
from fractions import Fraction

import pytest

from planemb.errors import NoDemands, ParamsInvalid, ParseError
from planemb.harness import (Instance, duality_ratio, generate, load_config, max_concurrent_flow,
                             parse_instance, sparsest_central_cut, verify, verify_many)
from planemb.planar import Demand, attribute_faces, check_cut_condition
from planemb.pipeline import embed_same_face_cuts
from shapes import cycle, path

F = Fraction


@pytest.mark.parametrize("kind,params", [("grid", {"rows": 3, "cols": 4}), ("random-planar", {"n": 11}),
                                         ("k23-golden", {}), ("nested-shortcut", {"depth": 2})])
def test_generate_is_deterministic(kind, params):
    a = generate(kind, params, seed=3).dumps()
    b = generate(kind, params, seed=3).dumps()
    assert a == b
    back = parse_instance(a)
    assert back.dumps() == a


def test_generate_errors():
    with pytest.raises(ParamsInvalid):
        generate("torus")
    with pytest.raises(ParamsInvalid):
        generate("grid", {"rows": 1})
    with pytest.raises(ParamsInvalid):
        generate("grid", {"bogus": 1, "rows": 1})


def test_random_planar_properties():
    for seed in range(10):
        inst = generate("random-planar", {"n": 12}, seed)
        assert inst.G.is_biconnected()
        for d in inst.demands:
            assert d.face is not None


def test_k23_golden_instance():
    k = generate("k23-golden")
    assert (k.G.n, k.G.m) == (5, 6)
    assert set(k.lengths) == {1}
    assert sorted((d.u, d.v, d.value) for d in k.demands) == [
        (0, 1, 1), (2, 3, 1), (2, 4, 1), (3, 4, 1)]


def test_grid_boundary_demands():
    g = generate("grid", {"rows": 3, "cols": 3}, 1)
    outer = set(g.G.face_vertices(g.G.outer_face))
    assert g.demands and all({d.u, d.v} <= outer for d in g.demands)
    check_cut_condition(g.G, g.lengths, g.demands)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_instance("{")
    with pytest.raises(ParseError):
        parse_instance({"n": 2, "edges": [[0, 1, 1, 0]], "rotation": [[0], [0]]})


def _path_instance(caps, demand):
    p = path(len(caps), caps)
    G = p.G
    return Instance(G, tuple(F(c) for c in caps), attribute_faces(G, [Demand(0, len(caps), F(demand))]))


def test_flow_single_path():
    inst = _path_instance([1], 1)
    assert max_concurrent_flow(inst.G, inst.lengths, inst.demands).lam == 1


def test_flow_bottleneck():
    inst = _path_instance([3, 1, 3], 2)
    for method in ("lp", "mw"):
        f = max_concurrent_flow(inst.G, inst.lengths, inst.demands, 0.01, method=method)
        assert abs(float(f.lam) - 0.5) <= 0.01 * 0.5 + 1e-12


@pytest.mark.parametrize("method,eps", [("lp", 1e-3), ("mw", 0.05)])
def test_flow_k23(method, eps):
    k = generate("k23-golden")
    f = max_concurrent_flow(k.G, k.lengths, k.demands, eps, method=method)
    assert f.lam <= F(3, 4) <= f.upper
    assert f.upper - f.lam <= eps * f.upper
    # the witness is exactly feasible at value lam
    assert all(x <= c for x, c in zip(f.routing.load(k.G.m), k.lengths))
    for d, ps in zip(f.routing.demands, f.routing.paths):
        assert sum(x for _, x in ps) >= f.lam * d.value


def test_flow_errors():
    k = generate("k23-golden")
    with pytest.raises(NoDemands):
        max_concurrent_flow(k.G, k.lengths, [])
    with pytest.raises(ParamsInvalid):
        max_concurrent_flow(k.G, k.lengths, k.demands, eps=0.5)
    with pytest.raises(ParamsInvalid):
        max_concurrent_flow(k.G, k.lengths, k.demands, method="simplex")


def test_sparsest_central_cut_k23():
    k = generate("k23-golden")
    ratio, side = sparsest_central_cut(k.G, k.lengths, k.demands)
    assert ratio == 1


def test_duality_ratio_bounds_lambda():
    for seed in range(4):
        inst = generate("random-planar", {"n": 10}, seed)
        f = max_concurrent_flow(inst.G, inst.lengths, inst.demands)
        C = embed_same_face_cuts(inst.G, inst.lengths)
        r = duality_ratio(inst.G, inst.lengths, inst.demands, C)
        assert r is None or f.lam <= r


def test_verify_k23():
    rep = verify(generate("k23-golden"))
    assert rep.cut_condition and rep.exit_code == 0
    assert abs(float(rep.lam) - 0.75) <= 1e-3
    assert rep.expansion <= 1 and rep.contraction <= rep.contraction_bound
    js = rep.to_json()
    assert js["cut_condition"] == "holds" and js["lambda"]["exact"] == "3/4"
    json.dumps(js)


def test_verify_violated():
    c = cycle(4)
    inst = Instance(c.G, c.lengths, attribute_faces(c.G, [Demand(0, 2, F(3))]), "tight")
    rep = verify(inst)
    assert not rep.cut_condition and rep.exit_code == 2 and rep.witness


def test_verify_geodesic_grid():
    rep = verify(generate("grid", {"rows": 4, "cols": 4}, 2))
    assert rep.contraction <= 21 and rep.ok


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"kpr": {"c_impl": "30", "samples": 16}, "kpr.seed": 9}))
    cfg = load_config(str(p), env={})
    assert (cfg.c_impl, cfg.samples, cfg.seed) == (30, 16, 9)
    cfg = load_config(str(p), env={"PLANEMB_SEED": "4"})
    assert cfg.seed == 4
    assert load_config(None, env={}).c_impl == 24
    p.write_text("{nope")
    with pytest.raises(ParseError):
        load_config(str(p), env={})


def test_verify_many_pool(tmp_path):
    paths = []
    for i, kind in enumerate(["k23-golden", "grid"]):
        p = tmp_path / f"{i}.json"
        p.write_text(generate(kind, seed=i).dumps())
        paths.append(str(p))
    bad = tmp_path / "bad.json"
    bad.write_text("[]")
    paths.append(str(bad))
    serial = verify_many(paths)
    pooled = verify_many(paths, workers=2)
    strip = [{k: v for k, v in r.items() if k != "seconds"} for r in serial]
    assert strip == [{k: v for k, v in r.items() if k != "seconds"} for r in pooled]
    assert [r["exit_code"] for r in serial] == [0, 0, 5]
