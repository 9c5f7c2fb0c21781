"""Re-measure the separation constant of the sampled partitions.

The default c_impl = 24 was fixed from this measurement; a result above it
means the default should be raised."""

from planemb.harness import gen_grid, gen_nested_shortcut, gen_random_planar
from planemb.scales import DEFAULT_C_IMPL, calibrate_c_impl

insts = [gen_grid(r, r) for r in (4, 6, 8)]
insts += [gen_random_planar(14, seed=s) for s in range(3)]
insts.append(gen_nested_shortcut(2))
worst = calibrate_c_impl([(i.G, i.lengths) for i in insts], samples=200)
print(f"worst separation ratio {worst:.2f}; configured c_impl {DEFAULT_C_IMPL}")
