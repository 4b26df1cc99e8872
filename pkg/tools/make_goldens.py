"""Regenerate the golden catalog files from closed-form family rules.

The lists here are written out family by family (unitary, odd/even
orthogonal, symplectic, exceptional) directly from the known classification
of the base spaces, NOT by running the diagram enumeration.  The test suite
and the CLI golden check compare the enumeration against these files, so
keeping this generator independent of isofib.dynkin is the point.

Run from the repository root:  python3 tools/make_goldens.py
"""
import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "isofib" / "golden"
RANK_CAP = 8


def sorted_pair(a, b):
    return (a, b) if a <= b else (b, a)


def hermitian():
    bases = {}
    # unitary family SU(m)/S(U(s)U(t)): fiber side labels follow the four
    # groupings SU(s), SU(t), U(s), U(t) plus the circle and the full
    # semisimple part; s = 1 leaves only SU(t) and the circle.
    for m in range(3, RANK_CAP + 2):
        for s in range(1, m // 2 + 1):
            t = m - s
            base = f"SU({m})/S(U({s})U({t}))"
            if s == 1:
                labels = {f"SU({m})/SU({t})", f"SU({m})/T1"}
            else:
                labels = {
                    f"SU({m})/SU({s})",
                    f"SU({m})/SU({t})",
                    f"SU({m})/U({s})",
                    f"SU({m})/U({t})",
                    f"SU({m})/SU({s})SU({t})",
                    f"SU({m})/T1",
                }
            bases[base] = sorted(labels)
    for n in range(2, RANK_CAP + 1):  # odd orthogonal
        base = f"SO({2*n+1})/SO(2)SO({2*n-1})"
        bases[base] = sorted({f"SO({2*n+1})/SO(2)", f"SO({2*n+1})/SO({2*n-1})"})
    for n in range(3, RANK_CAP + 1):  # symplectic
        bases[f"Sp({n})/U({n})"] = sorted({f"Sp({n})/SU({n})", f"Sp({n})/T1"})
    for n in range(4, RANK_CAP + 1):  # even orthogonal: quadric and U(n) types
        base = f"SO({2*n})/SO(2)SO({2*n-2})"
        bases[base] = sorted({f"SO({2*n})/SO(2)", f"SO({2*n})/SO({2*n-2})"})
        bases[f"SO({2*n})/U({n})"] = sorted({f"SO({2*n})/SU({n})", f"SO({2*n})/T1"})
    bases["E6/D5T1"] = sorted({"E6/D5", "E6/T1"})
    bases["E7/E6T1"] = sorted({"E7/E6", "E7/T1"})
    return {
        "schema_version": 1,
        "_range": f"classical ranks up to {RANK_CAP}; SU(2)/S(U(1)U(1)) omitted "
        "(its isotropy is the bare circle, nothing to split)",
        "bases": {k: bases[k] for k in sorted(bases)},
    }


def symmetric():
    bases = set()
    qk = set()

    def add_so(odd_total, a, b):
        lo, hi = sorted_pair(a, b)
        label = f"SO({a+b})/SO({lo})SO({hi})"
        bases.add(label)
        if lo in (3, 4):
            qk.add(label)

    for n in range(3, RANK_CAP + 1):  # odd orthogonal Grassmannians
        for i in range(2, n):
            add_so(2 * n + 1, 2 * i, 2 * (n - i) + 1)
    for n in range(4, RANK_CAP + 1):  # even orthogonal Grassmannians
        for i in range(2, n - 1):
            add_so(2 * n, 2 * i, 2 * n - 2 * i)
    for n in range(2, RANK_CAP + 1):  # quaternionic Grassmannians, incl. n = 2
        for s in range(1, n // 2 + 1):
            label = f"Sp({n})/Sp({s})Sp({n-s})"
            bases.add(label)
            if s == 1:
                qk.add(label)
    for label in ("G2/A1A1", "F4/A1C3", "E6/A1A5", "E7/A1D6", "E8/A1E7"):
        bases.add(label)
        qk.add(label)
    return {
        "schema_version": 1,
        "_range": f"classical ranks up to {RANK_CAP}",
        "bases": sorted(bases),
        "quaternion_kaehler": sorted(qk),
    }


def nearly_kaehler():
    return {
        "schema_version": 1,
        "simple": sorted(["G2/A2", "E8/A8"]),
        "split": sorted(["F4/A2A2", "E6/A2A2A2", "E7/A2A5", "E8/A2E6"]),
    }


def five_symmetric():
    return {
        "schema_version": 1,
        "bases": {"E8/A4A4": ["e8-a4a4--k1-0a4", "e8-a4a4--k1-1a4"]},
    }


def stiefel():
    bases = set()
    for s in range(1, RANK_CAP):
        for t in range(s, RANK_CAP - s + 1):
            lo, hi = 2 * s + 1, 2 * t + 1
            bases.add(f"SO({lo+hi})/SO({lo})SO({hi})")
    return {
        "schema_version": 1,
        "_range": f"s, t >= 1 with s + t <= {RANK_CAP}",
        "bases": sorted(bases),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    files = {
        "class_hermitian.json": hermitian(),
        "class_symmetric.json": symmetric(),
        "class_nearly_kaehler.json": nearly_kaehler(),
        "class_5_symmetric.json": five_symmetric(),
        "class_stiefel.json": stiefel(),
    }
    for name, payload in files.items():
        path = OUT / name
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
