"""The smooth on/off ramp that every field in the package blends with.

A band (lo, mid, hi) keeps the weight pinned at 1 up to mid, rolls it off
along a cubic between mid and hi, and holds 0 beyond.  Both the value and the
slope are continuous at the junctions, which is what keeps the combined
vector fields free of direction kinks when an obstacle's influence fades in.
"""

from herdsim import BlendTriplet, blend_weight

band = BlendTriplet(1.0, 2.0, 3.0)

print("weight profile for band (1, 2, 3):")
for delta in [0.0, 0.5, 1.0, 1.5, 2.0, 2.25, 2.5, 2.75, 3.0, 4.0]:
    bar = "#" * round(40 * blend_weight(delta, band))
    print(f"  delta = {delta:4.2f}  w = {blend_weight(delta, band):7.5f}  {bar}")

print()
print("one-sided slopes at the junctions (the ramp is C1):")
h = 1e-8
for x, name in [(band.mid, "mid"), (band.hi, "hi")]:
    left = (blend_weight(x, band) - blend_weight(x - h, band)) / h
    right = (blend_weight(x + h, band) - blend_weight(x, band)) / h
    print(f"  at {name}: left {left:+.3e}, right {right:+.3e}, "
          f"mismatch {abs(left - right):.2e}")

print()
print("distances below lo sit inside the violation zone; the weight stays")
print(f"saturated there so fields remain defined: w(0.2) = {blend_weight(0.2, band)}")
