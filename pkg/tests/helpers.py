import itertools
import random
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

INF_KEY = (1, 0)


class FareyGraph:
    """Finite piece of the Farey graph: slopes with ``q <= qmax`` and ``|p/q| <= bound``, plus inf.

    Edges come from repeated mediants of the unit intervals, never from the
    determinant test used by the library.
    """

    def __init__(self, qmax: int, bound: int):
        edges = set()
        for n in range(-bound, bound + 1):
            edges.add(((n, 1), INF_KEY))
            if n < bound:
                stack = [((n, 1), (n + 1, 1))]
                while stack:
                    (a, b), (c, d) = stack.pop()
                    edges.add(((a, b), (c, d)))
                    if b + d <= qmax:
                        m = (a + c, b + d)
                        stack.append(((a, b), m))
                        stack.append((m, (c, d)))
        vertices = sorted({v for e in edges for v in e})
        self.index = {v: i for i, v in enumerate(vertices)}
        self.vertices = vertices
        rows = [self.index[u] for u, v in edges] + [self.index[v] for u, v in edges]
        cols = [self.index[v] for u, v in edges] + [self.index[u] for u, v in edges]
        n = len(vertices)
        self.adjacency = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)).tocsr()

    def distances_from(self, sources):
        idx = [self.index[s] for s in sources]
        return shortest_path(self.adjacency, unweighted=True, directed=False, indices=idx)

    def slopes(self, qmax: int, bound: int):
        return [
            v for v in self.vertices
            if v == INF_KEY or (v[1] <= qmax and abs(Fraction(*v)) <= bound)
        ]


def both_letter_words(max_len: int):
    for n in range(2, max_len + 1):
        for letters in itertools.product("LR", repeat=n):
            w = "".join(letters)
            if "L" in w and "R" in w:
                yield w


def random_both_letter_words(count: int, max_len: int, seed: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        w = "".join(rng.choice("LR") for _ in range(rng.randint(2, max_len)))
        if "L" in w and "R" in w:
            out.append(w)
    return out


def swap_letters(word: str) -> str:
    return word.translate(str.maketrans("LR", "RL"))


def primes_up_to(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.nonzero(sieve)[0]


def cubic_root_counts(primes: np.ndarray) -> np.ndarray:
    """Number of roots of ``t^3 - t + 1`` mod p, without polynomial arithmetic.

    For ``(-23/p) = -1`` there is one root; for ``(-23/p) = 1`` there are
    three when ``4p = x^2 + 23 y^2`` and none otherwise; 23 itself has two.
    """
    r = primes % 23
    squares = np.zeros(23, dtype=bool)
    squares[[x * x % 23 for x in range(1, 23)]] = True
    chi = np.where(r == 0, 0, np.where(squares[r], 1, -1))
    split = np.zeros(len(primes), dtype=bool)
    big = 4 * primes.astype(np.int64)
    for y in range(1, int(np.sqrt(big.max() / 23)) + 2):
        m = big - 23 * y * y
        ok = m >= 0
        s = np.zeros_like(m)
        s[ok] = np.rint(np.sqrt(m[ok]))
        split |= ok & (s * s == m)
    return np.where(chi == 0, 2, np.where(chi == -1, 1, np.where(split, 3, 0)))


def euler_product_zeta_k2(limit: int) -> float:
    """``zeta_k(2)`` for the cubic field of discriminant -23 as a truncated Euler product."""
    primes = primes_up_to(limit)
    roots = cubic_root_counts(primes)
    x = primes.astype(float) ** -2.0
    # local factor from the splitting type: 1+1+1, 1+2, 3, and 1^2 1 at 23
    factor = np.select(
        [roots == 3, roots == 1, roots == 0, roots == 2],
        [(1 - x) ** -3, 1 / ((1 - x) * (1 - x * x)), 1 / (1 - x ** 3), (1 - x) ** -2],
    )
    return float(np.exp(np.sum(np.log(factor))))
