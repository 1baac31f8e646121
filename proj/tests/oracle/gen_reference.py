#!/usr/bin/env python3
"""Regenerates reference_values.hpp from 40-digit mpmath evaluations.

Run from the repository root:  python3 tests/oracle/gen_reference.py
The output is committed; tests never call Python.
"""
import itertools
import pathlib

import mpmath as mp

mp.mp.dps = 40


def faddeeva(z):
    return mp.exp(-z * z) * mp.erfc(-1j * z)


def erfcx(x):
    return mp.exp(x * x) * mp.erfc(x)


def scaled_erfi(z):
    return mp.exp(-z * z) * mp.erfi(z)


def transition_probability(w, lam):
    return lam**2 / (4 * mp.pi) * (mp.exp(-w * w) - mp.sqrt(mp.pi) * w * mp.erfc(w))


def correlation_x(a, d, l, lam):
    # Unscaled textbook form; only safe at extended precision.
    b = a + d
    pref = -lam**2 / (8 * mp.sqrt(mp.pi) * l) * mp.exp(-((a + b) ** 2 + l * l) / 4)
    zm = (l - 1j * d) / 2
    zp = (l + 1j * d) / 2
    bracket = (mp.exp(1j * d * l / 2) * mp.erfi(zm) + mp.exp(-1j * d * l / 2) * mp.erfi(zp)
               + 2j * mp.cos(d * l / 2))
    return pref * bracket


def c17(v):
    s = mp.nstr(v, 17, strip_zeros=False) if v != 0 else "0.0"
    return s if any(c in s for c in ".e") else s + ".0"


def cplx(v):
    v = mp.mpc(v)
    return "{" + c17(v.real) + ", " + c17(v.imag) + "}"


def main():
    out = []
    out.append("#pragma once")
    out.append("")
    out.append("// Generated by gen_reference.py with mpmath at 40 digits. Do not edit.")
    out.append("")
    out.append("#include <array>")
    out.append("#include <complex>")
    out.append("")
    out.append("namespace harvest_test::reference {")
    out.append("")
    out.append("struct ComplexSample {")
    out.append("  std::complex<double> z;")
    out.append("  std::complex<double> value;")
    out.append("};")
    out.append("")
    out.append("struct RealSample {")
    out.append("  double x;")
    out.append("  double value;")
    out.append("};")
    out.append("")
    out.append("struct XSample {")
    out.append("  double omega_a_sigma;")
    out.append("  double delta_omega_sigma;")
    out.append("  double l_over_sigma;")
    out.append("  double coupling;")
    out.append("  std::complex<double> x;")
    out.append("};")
    out.append("")

    pts = [complex(x, y) for x, y in itertools.product(
        [-9.5, -6.0, -3.3, -1.0, -0.2, 0.0, 0.4, 1.7, 2.0, 4.9, 7.1, 10.0],
        [-1.5, -0.3, 0.0, 0.05, 0.5, 1.0, 2.5, 4.4, 8.0, 10.0])]
    out.append(f"inline constexpr std::array<ComplexSample, {len(pts)}> kFaddeeva{{{{")
    for z in pts:
        out.append(f"    {{{cplx(z)}, {cplx(faddeeva(mp.mpc(z)))}}},")
    out.append("}};")
    out.append("")

    xs = [-3.0, -0.5, 0.0, 0.3, 1.0, 2.5, 4.9, 5.0, 7.5, 12.0, 26.0, 50.0]
    out.append(f"inline constexpr std::array<RealSample, {len(xs)}> kErfcx{{{{")
    for x in xs:
        out.append(f"    {{{c17(mp.mpf(x))}, {c17(erfcx(mp.mpf(x)))}}},")
    out.append("}};")
    out.append("")

    zs = [complex(3, 0), complex(0, 0.5), complex(1, 0.25), complex(12, 3), complex(-2, 1)]
    out.append(f"inline constexpr std::array<ComplexSample, {len(zs)}> kScaledErfi{{{{")
    for z in zs:
        out.append(f"    {{{cplx(z)}, {cplx(scaled_erfi(mp.mpc(z)))}}},")
    out.append("}};")
    out.append("")

    ws = [-1.0, 0.0, 0.5, 2.0, 5.0, 10.0]
    out.append(f"inline constexpr std::array<RealSample, {len(ws)}> kTransitionUnitCoupling{{{{")
    for w in ws:
        out.append(f"    {{{c17(mp.mpf(w))}, {c17(transition_probability(mp.mpf(w), 1))}}},")
    out.append("}};")
    out.append("")

    cfgs = [(a, r * a, l, 0.1) for a in (0.2, 0.5, 1.2) for r in (0.0, 0.5, 1.2)
            for l in (0.5, 2.0, 6.0)]
    cfgs += [(0.5, 0.5, 2.0, 0.1), (1.2, 1.44, 4.0, 0.1), (0.5, 0.0, 1.0, 0.1),
             (3.0, 10.0, 40.0, 0.1), (0.5, 30.0, 8.0, 0.1)]
    out.append(f"inline constexpr std::array<XSample, {len(cfgs)}> kCorrelationX{{{{")
    for a, d, l, lam in cfgs:
        mpv = [mp.mpf(repr(v)) for v in (a, d, l, lam)]
        out.append(f"    {{{a!r}, {d!r}, {l!r}, {lam!r}, {cplx(correlation_x(*mpv))}}},")
    out.append("}};")
    out.append("")
    out.append("}  // namespace harvest_test::reference")
    out.append("")

    path = pathlib.Path(__file__).with_name("reference_values.hpp")
    path.write_text("\n".join(out))


if __name__ == "__main__":
    main()
