"""K2,3 with four unit demands: the cut condition holds, yet only 3/4 of
every demand can be routed at once.  Prints the certificate on both sides."""

from planemb.cuts import distortion_report
from planemb.harness import duality_ratio, gen_k23_golden, max_concurrent_flow, sparsest_central_cut
from planemb.pipeline import embed_same_face_cuts
from planemb.planar import check_cut_condition

inst = gen_k23_golden()
G, cap = inst.G, inst.lengths

chk = check_cut_condition(G, cap, inst.demands)
print(f"cut condition: {'holds' if chk.holds else 'violated'} over {chk.checked} central cuts")
ratio, side = sparsest_central_cut(G, cap, inst.demands)
print(f"sparsest central cut: ratio {ratio}, side {sorted(side)}")

flow = max_concurrent_flow(G, cap, inst.demands)
print(f"max concurrent flow: lambda = {flow.lam} (dual bound {flow.upper})")
for d, paths in zip(flow.routing.demands, flow.routing.paths):
    legs = ", ".join(f"{x} on edges {list(p)}" for p, x in paths)
    print(f"  {d.u}-{d.v}: {legs}")

C = embed_same_face_cuts(G, inst.lengths)
rep = distortion_report(C, G, inst.lengths)
print(f"same-face embedding: {len(C)} cuts, expansion {rep.expansion}, contraction {rep.contraction}")
print(f"metric ratio sum(c*delta)/sum(d*delta) = {duality_ratio(G, cap, inst.demands, C)} >= lambda")
print(f"flow-cut gap on this instance: {1 / flow.lam}")
