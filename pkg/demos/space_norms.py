"""Compare measured smoothness norms against a closed-form test field."""

from paraflux import (INF, SpaceSpec, besov_norm, build_dyadic_system,
                      build_grid, lacunary_field, triebel_norm)

g = build_grid(1, 256)
sys = build_dyadic_system(g)

# one wave per block with amplitude 2^{-j}: the block norms are known
# exactly, so the sequence side of the norm can be checked by hand
amps = {j: complex(2.0 ** (-j)) for j in range(2, sys.jmax + 1)}
f = lacunary_field(g, amps, sys)

print("lacunary field with a_j = 2^-j on j=2..%d\n" % sys.jmax)
print("%-22s %14s %14s %14s" % ("space", "measured", "oracle", "rel err"))
for s in (-1.0, 0.0, 0.5, 1.0):
    for q in (1.0, 2.0, INF):
        spec = SpaceSpec("B", s, 2.0, q)
        got = besov_norm(f, spec, sys)
        want = f.oracle_norm(s, q)
        print("%-22s %14.8f %14.8f %14.3g"
              % (spec.label(), got, want, abs(got - want) / want))

# at p = q the two scales agree on every input
print("\nF vs B at p = q = 2:")
for s in (-1.0, 0.5, 1.0):
    b = besov_norm(f, SpaceSpec("B", s, 2.0, 2.0), sys)
    t = triebel_norm(f, SpaceSpec("F", s, 2.0, 2.0), sys)
    print("  s=%4.1f   B=%.10f  F=%.10f" % (s, b, t))
