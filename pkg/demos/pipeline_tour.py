"""Run the same-face embedding over the test suite and show which branch of
the recursion each instance took, with the measured distortion."""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from corpus import suite  # noqa: E402

from planemb.cuts import distortion_report  # noqa: E402
from planemb.pipeline import PipelineTrace, contraction_bound, embed_same_face_cuts  # noqa: E402

print(f"contraction bound: {contraction_bound()}")
print(f"{'instance':24s} {'n':>3s} {'cuts':>5s} {'expansion':>10s} {'contraction':>12s} {'s':>6s}  branches")
for inst in suite():
    tr = PipelineTrace()
    t = time.time()
    C = embed_same_face_cuts(inst.G, inst.lengths, trace=tr)
    rep = distortion_report(C, inst.G, inst.lengths)
    kinds = ",".join(e["kind"] for e in tr.events)
    print(f"{inst.name:24s} {inst.G.n:3d} {len(C):5d} {float(rep.expansion):10.3f} "
          f"{float(rep.contraction):12.3f} {time.time() - t:6.2f}  {kinds}")
