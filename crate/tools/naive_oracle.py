#!/usr/bin/env python3
"""Brute-force reference for the committed test fixtures.

Deliberately naive: containment by trying every subsequence, grid membership
by trying every set of dividing lines, bases by filtering every permutation
of each length. Shares no code with the Rust engine.

    python3 tools/naive_oracle.py crates/core/tests/fixtures
"""
import itertools
import json
import sys
from functools import lru_cache


def reduce(seq):
    order = sorted(seq)
    return tuple(order.index(x) + 1 for x in seq)


def contains(pattern, host):
    k = len(pattern)
    return any(reduce(sub) == pattern for sub in itertools.combinations(host, k))


def in_cell(cell, seq):
    if cell == "inc":
        return all(a < b for a, b in zip(seq, seq[1:]))
    if cell == "dec":
        return all(a > b for a, b in zip(seq, seq[1:]))
    if cell == "empty":
        return len(seq) == 0
    if cell == "all":
        return True
    return not any(contains(b, seq) for b in cell)


def render_cell(cell):
    if isinstance(cell, str):
        return cell
    return "Av(" + ",".join("".join(map(str, b)) for b in cell) + ")"


def render_grid(g):
    a, b, c, d = g
    return "[%s %s; %s %s]" % tuple(render_cell(x) for x in (a, b, c, d))


def member_grid(g, p):
    a, b, c, d = g
    n = len(p)
    for v in range(n + 1):
        for h in range(n + 1):
            left, right = p[:v], p[v:]
            if (in_cell(a, [x for x in left if x > h])
                    and in_cell(c, [x for x in left if x <= h])
                    and in_cell(b, [x for x in right if x > h])
                    and in_cell(d, [x for x in right if x <= h])):
                return True
    return False


def member_f(g, p):
    a, b, c, d = g
    n = len(p)
    for v in range(n + 1):
        left, right = p[:v], p[v:]
        for l in range(n + 1):
            if not (in_cell(a, [x for x in left if x > l]) and in_cell(c, [x for x in left if x <= l])):
                continue
            for r in range(n + 1):
                if in_cell(b, [x for x in right if x > r]) and in_cell(d, [x for x in right if x <= r]):
                    return True
    return False


def member_juxt(left_cell, right_cell, p):
    return any(in_cell(left_cell, p[:v]) and in_cell(right_cell, p[v:]) for v in range(len(p) + 1))


def deletions(p):
    return {reduce(p[:i] + p[i + 1:]) for i in range(len(p))}


def naive_basis(member, max_len):
    member = lru_cache(maxsize=None)(member)
    basis, counts = [], {}
    for n in range(1, max_len + 1):
        count = 0
        for p in itertools.permutations(range(1, n + 1)):
            if member(p):
                count += 1
            elif all(member(d) for d in deletions(p)):
                basis.append(list(p))
        counts[str(n)] = count
    basis.sort(key=lambda b: (len(b), b))
    return {"max_len": max_len, "basis": basis, "members_by_length": counts}


MONO = ("inc", "dec")


def main(out_dir):
    monotone = {}
    for cells in itertools.product(MONO, repeat=4):
        monotone[render_grid(cells)] = naive_basis(lambda p, g=cells: member_grid(g, p), 7)
    dump(out_dir, "monotone_2x2.json", monotone)

    dump(out_dir, "juxt_inc_inc.json",
         {"[inc|inc]": naive_basis(lambda p: member_juxt("inc", "inc", p), 6)})

    av = lambda *ps: tuple(tuple(int(ch) for ch in s) for s in ps)
    mixed = [
        (av("321"), "inc", "inc", "dec"),
        ("dec", av("231"), "inc", "dec"),
        ("inc", av("3142"), "dec", "inc"),
        (av("321"), av("231"), "inc", "inc"),
        (av("3142"), "dec", "dec", "inc"),
        ("inc", "inc", av("321"), av("231")),
        (av("231"), av("312"), "inc", "dec"),
    ]
    battery = {}
    for g in mixed:
        battery[render_grid(g)] = {
            "grid": naive_basis(lambda p, g=g: member_grid(g, p), 6),
            "f": naive_basis(lambda p, g=g: member_f(g, p), 6),
        }
    dump(out_dir, "mixed_battery.json", battery)

    c = av("321654")
    nonfb = ("empty", c, c, "empty")
    dump(out_dir, "nonfb.json", {render_grid(nonfb): naive_basis(lambda p: member_grid(nonfb, p), 6)})


def dump(out_dir, name, obj):
    with open("%s/%s" % (out_dir, name), "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote", name)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
