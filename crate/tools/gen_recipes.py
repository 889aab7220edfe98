"""Generate the recipe files in data/recipes.

Each group is built from a classical model, its order is checked with sympy, and
the base block is the lexicographically first k-subset whose orbit is a 2-design
with the requested parameters. Run from the repository root:

    python3 tools/gen_recipes.py
"""

import itertools
import random
from pathlib import Path

import sympy.core.random as sympy_random
from sympy.combinatorics import Permutation, PermutationGroup

OUT = Path("data/recipes")


class GF:
    """GF(p^e) with elements coded as base-p integers of their coefficients."""

    def __init__(self, p, e, modulus):
        self.p, self.e, self.q = p, e, p**e
        self.modulus = modulus  # low-to-high coefficients, monic, degree e
        self.mul_table = [[self._mul(a, b) for b in range(self.q)] for a in range(self.q)]

    def digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def code(self, ds):
        return sum(d * self.p**i for i, d in enumerate(ds))

    def add(self, a, b):
        return self.code([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.code([(-x) % self.p for x in self.digits(a)])

    def _mul(self, a, b):
        prod = [0] * (2 * self.e)
        for i, x in enumerate(self.digits(a)):
            for j, y in enumerate(self.digits(b)):
                prod[i + j] += x * y
        for k in range(2 * self.e - 1, self.e - 1, -1):
            c = prod[k] % self.p
            prod[k] = 0
            for i in range(self.e):
                prod[k - self.e + i] -= c * self.modulus[i]
        return self.code([x % self.p for x in prod[: self.e]])

    def mul(self, a, b):
        return self.mul_table[a][b]

    def inv(self, a):
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)

    def pow(self, a, n):
        r = 1
        for _ in range(n):
            r = self.mul(r, a)
        return r

    def primitive(self):
        for a in range(2, self.q):
            x, k = a, 1
            while x != 1:
                x, k = self.mul(x, a), k + 1
            if k == self.q - 1:
                return a
        return 1


def mobius(f, a, b, c, d):
    """x -> (a x + b)/(c x + d) on GF(q) + {inf}, inf coded as q."""
    inf = f.q

    def img(x):
        if x == inf:
            return inf if c == 0 else f.mul(a, f.inv(c))
        num = f.add(f.mul(a, x), b)
        den = f.add(f.mul(c, x), d)
        return inf if den == 0 else f.mul(num, f.inv(den))

    return [img(x) for x in range(f.q + 1)]


def psl2_generators(f, frobenius=False):
    w = f.primitive()
    gens = [mobius(f, 1, 1, 0, 1), mobius(f, f.mul(w, w), 0, 0, 1), mobius(f, 0, f.neg(1), 1, 0)]
    if frobenius:
        gens.append([x if x == f.q else f.pow(x, f.p) for x in range(f.q + 1)])
    return gens


def group(gens):
    return PermutationGroup([Permutation(g) for g in gens])


def orbit(gens, block):
    start = tuple(sorted(block))
    seen = {start}
    todo = [start]
    while todo:
        b = todo.pop()
        for g in gens:
            c = tuple(sorted(g[x] for x in b))
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return seen


def is_2design(v, blocks, lam):
    count = {}
    for b in blocks:
        for pair in itertools.combinations(b, 2):
            count[pair] = count.get(pair, 0) + 1
    return len(count) == v * (v - 1) // 2 and set(count.values()) == {lam}


def first_block(gens, v, k, b, lam):
    seen = set()
    for cand in itertools.combinations(range(v), k):
        if cand in seen:
            continue
        orb = orbit(gens, cand)
        seen |= orb
        if len(orb) == b and is_2design(v, orb, lam):
            return list(cand)
    raise ValueError("no base block found")


def automorphisms(v, blocks, target, seed):
    """Random automorphisms of a design until they generate a group of order `target`."""
    rng = random.Random(seed)
    blockset = {frozenset(b) for b in blocks}
    partial = set()
    for b in blockset:
        for r in range(1, len(b) + 1):
            partial.update(frozenset(s) for s in itertools.combinations(b, r))
    through = [[b for b in blockset if x in b] for x in range(v)]

    def search():
        image = [None] * v
        used = set()

        def ok(x):
            for b in through[x]:
                assigned = [image[y] for y in b if image[y] is not None]
                if frozenset(assigned) not in partial:
                    return False
            return True

        def dfs(x):
            if x == v:
                return True
            cands = [y for y in range(v) if y not in used]
            rng.shuffle(cands)
            for y in cands:
                image[x] = y
                used.add(y)
                if ok(x) and dfs(x + 1):
                    return True
                used.discard(y)
                image[x] = None
            return False

        assert dfs(0)
        assert all(frozenset(image[y] for y in b) in blockset for b in blockset)
        return image

    gens = []
    while group(gens or [list(range(v))]).order() != target:
        gens.append(search())
    return gens


def small_generating_set(g, target, seed):
    """Two or three random elements of `g` that still generate a group of order `target`."""
    rng = random.Random(seed)
    elements = list(g.generate_schreier_sims()) if g.order() <= 50000 else None
    for size in (2, 3, 4):
        for _ in range(200):
            if elements is not None:
                pick = [rng.choice(elements) for _ in range(size)]
            else:
                pick = []
                for _ in range(size):
                    w = Permutation(list(range(g.degree)))
                    for _ in range(40):
                        w = w * rng.choice(g.generators)
                    pick.append(w)
            if PermutationGroup(pick).order() == target:
                return [p.array_form for p in pick]
    raise ValueError("no small generating set")


def gf2_vectors_group():
    """GL_4(2) on the 15 nonzero vectors of GF(2)^4, vector x coded as x - 1."""

    def matrix_perm(rows):
        def apply(x):
            out = 0
            for i in range(4):
                if (x >> i) & 1:
                    out ^= rows[i]
            return out

        return [apply(x) - 1 for x in range(1, 16)]

    # Elementary transvection and the companion matrix of x^4 + x + 1.
    return [matrix_perm([0b0011, 0b0010, 0b0100, 0b1000]), matrix_perm([0b0010, 0b0100, 0b1000, 0b0011])]


def write(name, cite, provenance, v, expect, order, stab, bstab, gens, block):
    lines = [f"# {line}" for line in provenance]
    lines += [
        f"name={name}",
        f"cite={cite}",
        f"v={v}",
        "expect=" + ",".join(map(str, expect)),
        f"expect_group_order={order}",
        f"expect_point_stabilizer_order={stab}",
        f"expect_block_stabilizer_order={bstab}",
    ]
    lines += ["gen=[" + ",".join(map(str, g)) + "]" for g in gens]
    lines.append("base_block=" + ",".join(map(str, block)))
    OUT.joinpath(f"{name}.recipe").write_text("\n".join(lines) + "\n")
    print(name, expect, order)


def check(gens, order, v):
    g = group(gens)
    assert g.order() == order, (g.order(), order)
    assert g.degree == v


def projective_line_recipe(name, p, e, modulus, expect, order, stab, bstab, frobenius=False):
    f = GF(p, e, modulus)
    gens = psl2_generators(f, frobenius)
    v, b, r, k, lam = expect
    check(gens, order, v)
    block = first_block(gens, v, k, b, lam)
    kind = "PSigmaL" if frobenius else "PSL"
    cite = f"{kind}(2,{p**e}) on PG(1,{p**e})"
    provenance = [
        f"{kind}(2,{p**e}) acting on the projective line over GF({p**e}); point {p**e} is infinity.",
        f"Generators: x -> x + 1, x -> w^2 x with w = {f.primitive()}, x -> -1/x" + (", x -> x^p." if frobenius else "."),
    ]
    if e > 1:
        provenance.append(f"GF({p**e}) elements are base-{p} codes of polynomials modulo the monic polynomial with low coefficients {modulus}.")
    write(name, cite, provenance, v, expect, order, stab, bstab, gens, block)


def psl2_8_on_28():
    # GF(64) with modulus x^6 + x + 1; GF(8)* is generated by w^9.
    f = GF(2, 6, [1, 1, 0, 0, 0, 0])
    w = f.primitive()
    z = f.pow(w, 9)
    pts = []
    index = {}
    for x in range(f.q):
        if x == 0 or f.pow(x, 8) == x:
            continue
        pair = tuple(sorted((x, f.pow(x, 8))))
        if pair not in index:
            index[pair] = len(pts)
            pts.append(pair)
    assert len(pts) == 28

    def induced(m):
        return [index[tuple(sorted((m[a], m[b])))] for a, b in pts]

    gens = [induced(mobius(f, 1, 1, 0, 1)), induced(mobius(f, z, 0, 0, 1)), induced(mobius(f, 0, 1, 1, 0))]
    expect = (28, 36, 9, 7, 2)
    check(gens, 504, 28)
    block = first_block(gens, 28, 7, 36, 2)
    provenance = [
        "PSL(2,8) acting on the 28 pairs {z, z^8} of conjugate points of PG(1,64) outside PG(1,8).",
        "Points are numbered by their smaller element in GF(64) (modulus x^6 + x + 1, low to high [1,1,0,0,0,0]).",
        "Generators: x -> x + 1, x -> w^9 x, x -> 1/x.",
    ]
    write("psl2-8-on-28", "PSL(2,8) on 28 points", provenance, 28, expect, 504, 18, 14, gens, block)


def paley_biplane_recipe():
    v = 11
    qr = sorted({x * x % 11 for x in range(1, 11)})
    blocks = [tuple(sorted((x + t) % 11 for x in qr)) for t in range(11)]
    aut = automorphisms(11, blocks, 660, seed=5)
    gens = small_generating_set(group(aut), 660, seed=5)
    check(gens, 660, 11)
    write(
        "psl2-11-on-11",
        "PSL(2,11) on 11 points, Hadamard biplane",
        [
            "Automorphism group of the Paley biplane on Z_11 with base block the quadratic residues.",
            "Generators found by randomized backtracking, then shortened; order checked with sympy.",
        ],
        v,
        (11, 11, 5, 5, 2),
        660,
        60,
        60,
        gens,
        qr,
    )


def m11_on_12_recipe():
    qr = sorted({x * x % 11 for x in range(1, 11)})
    biplane = [{(x + t) % 11 for x in qr} for t in range(11)]
    blocks = [tuple(sorted(b | {11})) for b in biplane] + [tuple(sorted(set(range(11)) - b)) for b in biplane]
    aut = automorphisms(12, blocks, 7920, seed=11)
    gens = small_generating_set(group(aut), 7920, seed=11)
    check(gens, 7920, 12)
    block = first_block(gens, 12, 6, 22, 5)
    write(
        "m11-on-12",
        "M11 on 12 points",
        [
            "Automorphism group of the Hadamard 3-(12,6,2) design: the Paley biplane blocks on Z_11 plus",
            "the point 11, together with their complements in Z_11. Generators found by randomized",
            "backtracking, then shortened; order checked with sympy.",
        ],
        12,
        (12, 22, 11, 6, 5),
        7920,
        660,
        360,
        gens,
        block,
    )


def golay_hexads():
    """Hexads of S(3,6,22): octads of the extended binary Golay code through coordinates 0 and 23."""
    # Generator polynomial x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1 of the binary Golay code.
    g = sum(1 << i for i in (0, 2, 4, 5, 6, 10, 11))
    words = {0}
    for s in range(12):
        words |= {w ^ (g << s) for w in words}
    assert len(words) == 4096
    octads = []
    for w in words:
        bits = [(w >> i) & 1 for i in range(23)]
        weight = sum(bits)
        ext = bits + [weight % 2]
        if sum(ext) == 8:
            octads.append([i for i in range(24) if ext[i]])
    assert len(octads) == 759
    # Points 0 and 23 (infinity) are removed; the rest are renumbered 0..21.
    hexads = [tuple(x - 1 for x in o if x not in (0, 23)) for o in octads if 0 in o and 23 in o]
    assert len(hexads) == 77
    return hexads


def m22_recipes():
    hexads = golay_hexads()
    aut = automorphisms(22, hexads, 887040, seed=22)
    full = group(aut)
    gens2 = small_generating_set(full, 887040, seed=22)
    derived = full.derived_subgroup()
    assert derived.order() == 443520
    gens1 = small_generating_set(derived, 443520, seed=23)
    provenance = [
        "Hexads of the Steiner system S(3,6,22): octads of the extended binary Golay code (cyclic code of",
        "length 23 with generator x^11+x^10+x^6+x^5+x^4+x^2+1, plus parity) through coordinates 0 and 23, renumbered 0..21.",
        "{} found as the automorphism group of the hexads by randomized backtracking{}; order checked with sympy.",
    ]
    block = min(hexads)
    p1 = provenance[:2] + [provenance[2].format("M22", " (derived subgroup)")]
    p2 = provenance[:2] + [provenance[2].format("M22:2", "")]
    write("m22-on-22", "M22 on 22 points", p1, 22, (22, 77, 21, 6, 5), 443520, 20160, 5760, gens1, block)
    write("m22-2-on-22", "M22:2 on 22 points", p2, 22, (22, 77, 21, 6, 5), 887040, 40320, 11520, gens2, block)


def pg32_recipes():
    gl = gf2_vectors_group()
    check(gl, 20160, 15)
    lines = sorted({tuple(sorted((a - 1, b - 1, (a ^ b) - 1))) for a in range(1, 16) for b in range(1, 16) if a != b})
    assert len(lines) == 35
    provenance = [
        "Points of PG(3,2) as the nonzero vectors x of GF(2)^4 (bit i is coordinate i), point x - 1.",
        "Lines are {a, b, a + b}.",
    ]
    write(
        "a8-on-15",
        "A8 = PSL(4,2) on the points of PG(3,2)",
        provenance + ["Generators: the transvection e0 -> e0 + e1 and the companion matrix of x^4 + x + 1."],
        15,
        (15, 35, 7, 3, 1),
        20160,
        1344,
        576,
        gl,
        list(lines[0]),
    )
    g = group(gl)
    rng = random.Random(7)

    def word():
        w = Permutation(list(range(15)))
        for _ in range(40):
            w = w * rng.choice(g.generators)
        return w

    while True:
        a, b = word(), word()
        h = PermutationGroup([a, b])
        if h.order() == 2520 and h.is_transitive():
            gens = [a.array_form, b.array_form]
            break
    write(
        "a7-on-15",
        "A7 on the points of PG(3,2)",
        provenance + ["A7 is a subgroup of PSL(4,2) found as a random 2-generated subgroup of order 2520, transitive on points."],
        15,
        (15, 35, 7, 3, 1),
        2520,
        168,
        72,
        gens,
        list(lines[0]),
    )


def main():
    sympy_random.seed(2024)
    OUT.mkdir(parents=True, exist_ok=True)
    projective_line_recipe("psl2-5-on-6", 5, 1, [0, 1], (6, 10, 5, 3, 2), 60, 10, 6)
    projective_line_recipe("psl2-7-on-8", 7, 1, [0, 1], (8, 14, 7, 4, 3), 168, 21, 12)
    psl2_8_on_28()
    projective_line_recipe("psl2-9-on-10", 3, 2, [1, 0], (10, 15, 9, 6, 5), 360, 36, 24)
    paley_biplane_recipe()
    m11_on_12_recipe()
    m22_recipes()
    projective_line_recipe("s6-on-10", 3, 2, [1, 0], (10, 15, 9, 6, 5), 720, 72, 48, frobenius=True)
    pg32_recipes()


if __name__ == "__main__":
    main()
