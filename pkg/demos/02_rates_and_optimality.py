"""Color rate vs block rate across the four families.

The color rate log(a)/log(v) measures how many message/key bits each channel
use carries; the block rate log(b)/log(v) measures the seed cost.  Mosaics of
BIBDs cannot beat b = max((v-1) k a^2 / (v (k-1)), v), mosaics of GDDs cannot
beat b = a^2, and the constructions below sit on or near those floors.
"""

import designmosaics as dm

rows = []
for t, q in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)]:
    rows.append((f"M1({t},{q})", dm.build_m1(t, q)))
for t, l in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]:
    rows.append((f"M2({t},{l})", dm.build_m2(t, l)))
for t, l, u in [(2, 1, 2), (2, 2, 4), (3, 3, 8)]:
    rows.append((f"M3({t},{l},{u})", dm.build_m3(t, l, u)))
for k, q in [(2, 3), (3, 4), (5, 4), (6, 5)]:
    rows.append((f"M4({k},{q})", dm.build_m4(k, q)))

print(f"{'mosaic':>12} {'v':>5} {'b':>5} {'a':>4} "
      f"{'color':>7} {'block':>7} {'b-rate/c-rate':>13}  verdict")
print("-" * 78)
for name, M in rows:
    rep = dm.rates(M)
    print(f"{name:>12} {M.v:>5} {M.b:>5} {M.a:>4} "
          f"{rep.color_rate:>7.4f} {rep.block_rate:>7.4f} {rep.ratio:>13.4f}  {rep.verdict}")

print()
print("Observations")
print("  * every M2 and M4 mosaic is block-rate optimal (lambda = 1, resp. b = a^2);")
print("  * M1 with t = 2 is optimal, while t >= 3 is merely close: for M1(3,2) the")
rep = dm.rates(dm.build_m1(3, 2))
print(f"    block rate {rep.block_rate:.6f} stays below the family bound "
      f"1 + (1/t)(1 - log(q-1)/log q) = {1 + 1/3:.6f};")
print("  * M3 point multiples trade color rate for the same block structure, so the")
print("    ratio log b / log a of the base M2 mosaic is preserved:")
base = dm.rates(dm.build_m2(2, 2))
for u in (2, 4, 8):
    rep = dm.rates(dm.build_m3(2, 2, u))
    print(f"      u={u}: color rate {rep.color_rate:.4f}, ratio {rep.ratio:.6f} "
          f"(base {base.ratio:.6f})")

print()
print("TD color-rate floor: a block-rate-optimal mosaic of (u,k,1) TDs needs")
print("color rate at least log u / (log u + log(u+1)); equality holds exactly")
print("for duals of affine planes (k = q + 1):")
for q in (3, 4, 5):
    rep = dm.rates(dm.build_m4(q + 1, q))
    print(f"  M4({q + 1},{q}): color rate {rep.color_rate:.6f} "
          f"floor {rep.td_rate_floor:.6f}")
