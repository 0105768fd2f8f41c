"""The spin extension of the symmetric group, realized in a Clifford algebra.

The algebra has generators e_0..e_{n-1} with e_i^2 = -1. Elements are numpy
integer arrays of length 2^n indexed by the bitmask of a basis blade. The lift
of the adjacent transposition (a a+1) is u_a = e_a - e_{a+1}; its square is
-2, a negative multiple of 1, which is how the central element z shows up.
"""

import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from gridhom.shared.errors import SizeMismatch

Permutation = tuple[int, ...]


def inversions(perm: Permutation) -> int:
    n = len(perm)
    return sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])


class CliffordAlgebra:
    """Integer Clifford algebra of negative-definite signature on n generators."""

    def __init__(self, n: int):
        self.n = n
        self.size = 1 << n
        index = np.arange(self.size, dtype=np.int64)
        grades = np.array([bin(i).count("1") for i in range(self.size)], dtype=np.int64)
        self._index = index
        self.reverse_sign = np.where((grades * (grades - 1) // 2) % 2 == 0, 1, -1).astype(np.int64)
        self.square_sign = np.where((grades * (grades + 1) // 2) % 2 == 0, 1, -1).astype(np.int64)
        self._gen_sign = []
        for a in range(n):
            bit = 1 << a
            below = np.array([bin(i & (bit - 1)).count("1") for i in range(self.size)], dtype=np.int64)
            sign = np.where(below % 2 == 0, 1, -1).astype(np.int64)
            sign = np.where(index & bit, -sign, sign)
            self._gen_sign.append(sign)

    def one(self) -> np.ndarray:
        element = np.zeros(self.size, dtype=np.int64)
        element[0] = 1
        return element

    def mul_generator(self, a: int, element: np.ndarray) -> np.ndarray:
        """Left multiplication by e_a."""
        result = np.empty_like(element)
        result[self._index ^ (1 << a)] = self._gen_sign[a] * element
        return result

    def mul_difference(self, a: int, b: int, element: np.ndarray) -> np.ndarray:
        """Left multiplication by e_a - e_b."""
        return self.mul_generator(a, element) - self.mul_generator(b, element)

    def reverse(self, element: np.ndarray) -> np.ndarray:
        return self.reverse_sign * element

    def scalar_product(self, left: np.ndarray, right: np.ndarray) -> int:
        """Scalar part of ``left * right``."""
        return int(np.dot(left * right, self.square_sign))


def descent_word(perm: Permutation) -> list[int]:
    """Word a_1..a_k with perm = s_{a_1} ... s_{a_k}, peeling the smallest value descent."""
    word = []
    current = list(perm)
    while True:
        position = {value: i for i, value in enumerate(current)}
        for a in range(len(current) - 1):
            if position[a + 1] < position[a]:
                break
        else:
            return word
        word.append(a)
        i, j = position[a], position[a + 1]
        current[i], current[j] = current[j], current[i]


class SpinSection:
    """The section gamma of the spin extension over all permutations of size n."""

    def __init__(self, n: int):
        self.n = n
        self.algebra = CliffordAlgebra(n)
        self._cache: dict[Permutation, np.ndarray] = {}
        self._lock = threading.Lock()

    def word(self, perm: Permutation) -> list[int]:
        return descent_word(perm)

    def apply_word(self, word: list[int], element: np.ndarray) -> np.ndarray:
        for a in reversed(word):
            element = self.algebra.mul_difference(a, a + 1, element)
        return element

    def gamma(self, perm: Permutation) -> np.ndarray:
        cached = self._cache.get(perm)
        if cached is not None:
            return cached
        element = self.apply_word(self.word(perm), self.algebra.one())
        element.setflags(write=False)
        with self._lock:
            self._cache[perm] = element
        return element


@lru_cache(maxsize=16)
def spin_section(n: int) -> SpinSection:
    return SpinSection(n)


@dataclass(frozen=True)
class SpinElement:
    perm: Permutation
    z_parity: int = 0


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a o b)[i] = a[b[i]]."""
    return tuple(a[k] for k in b)


def transposition_lift(n: int, a: int) -> SpinElement:
    """The lift of the adjacent transposition swapping a and a+1 (0-based)."""
    perm = list(range(n))
    perm[a], perm[a + 1] = perm[a + 1], perm[a]
    return SpinElement(tuple(perm), 0)


def spin_mul(a: SpinElement, b: SpinElement) -> SpinElement:
    """Group law of the spin extension.

    An element (perm, e) stands for z^e gamma(perm). The product of the two
    gammas is a real multiple of gamma(a o b); a negative multiple adds z.
    """
    if len(a.perm) != len(b.perm):
        raise SizeMismatch(f"spin elements of sizes {len(a.perm)} and {len(b.perm)}")
    section = spin_section(len(a.perm))
    perm = compose(a.perm, b.perm)
    product = section.apply_word(section.word(a.perm), section.gamma(b.perm))
    target = section.gamma(perm)
    pairing = section.algebra.scalar_product(product, section.algebra.reverse(target))
    if inversions(perm) % 2:
        pairing = -pairing
    flip = 1 if pairing < 0 else 0
    return SpinElement(perm, a.z_parity ^ b.z_parity ^ flip)
