"""Regenerate tests/oracle_values.json with mpmath at 60 significant digits.

The formulas are written out directly from their definitions and share no
code with the package.  Run once; the tests read the frozen file.
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60
OUT = Path(__file__).resolve().parent.parent / "tests" / "oracle_values.json"


def nt(n):
    return 2 if n % 2 == 0 else 1


def V(n):
    return mp.fprod(mp.factorial(i) / (2 * mp.pi) ** (i + 1) for i in range(1, n))


def s_outer(n):
    r = n - 1
    return r * (r + 3) // 2 if r % 2 == 0 else (r - 1) * (r + 2) // 2


def common(m, n):
    return (12 / mp.pi) ** (2 * m) * V(n) ** (m - 1) / (100 * nt(n) ** m * n)


def M(m, n):
    return common(m, n) * (mp.mpf(m) ** m / mp.factorial(m)) ** (n * n - 5)


def Mp(m, n):
    return common(m, n) * (mp.sqrt(mp.mpf("29.534")) ** m * mp.exp(mp.mpf("-4.13335"))) ** (n * n - 5)


def N(n):
    return (12 / mp.pi) ** 2 * mp.mpf(40) ** (mp.mpf(n * n - n - 6) / 4) / (100 * nt(n) ** 2 * n)


def Np(n):
    return mp.mpf(5) ** (mp.mpf(n * n - n - 2) / 4) / (nt(n) ** 2 * n)


def C(m, n):
    return (230 * nt(n) ** m * (mp.pi / 12) ** (2 * m) * V(n) ** (1 - m) * n) ** (mp.mpf(2) / (n * n - 5))


def Brel(m, n, dk, refined=False):
    K = 230 * mp.exp(-(mp.mpf("0.82") + mp.mpf("0.1") * m)) if refined else mp.mpf(230)
    base = K * nt(n) ** m * (mp.pi / 12) ** (2 * m) * mp.mpf(dk) ** (mp.mpf(5 - n * n) / 2) * V(n) ** (1 - m) * n
    return base ** (mp.mpf(2) / (s_outer(n) - 2))


Z23 = mp.zeta(2) * mp.zeta(3)


def H(m, dmin=None):
    d = dmin if dmin is not None else (
        mp.mpf("25.465") ** 2 * mp.mpf("13.316") ** (2 * m - 2) * mp.exp(mp.mpf("-7.0667")))
    return mp.mpf(d) ** 2 * V(3) ** (m - 1) / (3 * Z23)


def hilbert(m, h):
    return mp.mpf("60.015") ** 2 * mp.mpf("22.210") ** (2 * m - 2) * mp.exp(-mp.mpf("80.001") / h)


def U3(m):
    return 300 * Z23 * (mp.pi / 12) ** (2 * m) * V(3) ** (1 - m)


def main():
    prodzeta = mp.fprod(mp.zeta(i) for i in range(2, 400))
    out = {
        "pi": mp.pi,
        "zeta": {str(s): mp.zeta(s) for s in range(2, 10)},
        "zeta23": Z23,
        "prodzeta": prodzeta,
        "V": {str(n): V(n) for n in range(2, 13)},
        "covolume": {str(n): V(n) * mp.fprod(mp.zeta(i) for i in range(2, n + 1)) for n in range(2, 9)},
        "M": {f"{m},{n}": M(m, n) for m in range(1, 9) for n in range(2, 12)},
        "Mprime": {f"{m},{n}": Mp(m, n) for m in range(1, 17) for n in range(2, 12)},
        "N": {str(n): N(n) for n in range(2, 13)},
        "Nprime": {str(n): Np(n) for n in range(2, 13)},
        "C": {f"{m},{n}": C(m, n) for m in range(1, 9) for n in range(3, 10)},
        "Brel": {f"{m},{n},{dk}": Brel(m, n, dk) for (m, n, dk) in [
            (5, 4, 14641), (4, 4, 1600), (3, 4, 169), (3, 4, 148), (3, 4, 81), (3, 4, 49), (3, 5, 49),
            (2, 4, 5), (2, 4, 8), (2, 4, 12), (2, 4, 13), (2, 4, 17), (2, 4, 21), (2, 5, 5), (2, 5, 8), (2, 6, 5)]},
        "Brel_refined": {f"{m},{n},{dk}": Brel(m, n, dk, True) for (m, n, dk) in [(4, 4, 725), (4, 4, 1125)]},
        "H": {str(m): H(m) for m in range(5, 16)},
        "H_min": {"2,275": H(2, 275), "3,28037": H(3, 28037), "4,4286875": H(4, 4286875)},
        "hilbert_at_H": {str(m): hilbert(m, H(m)) for m in range(5, 16)},
        "U3": {str(m): U3(m) for m in range(2, 16)},
    }

    def conv(x):
        if isinstance(x, dict):
            return {k: conv(v) for k, v in x.items()}
        return mp.nstr(x, 40)

    OUT.parent.mkdir(exist_ok=True)
    OUT.write_text(json.dumps(conv(out), indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
