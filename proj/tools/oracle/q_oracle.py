#!/usr/bin/env python3
# Copyright 2026 The sotrace Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the frozen tests.

Q is evaluated as the literal signed sum over all permutations of
{0..2n-1} with Python Fractions; nothing is shared with the C++ code.
The formula matrices below are mirrored in tests/frozen_inputs.hpp.
"""

from fractions import Fraction as F
from itertools import permutations


class G:
    """Gaussian rational re + i im."""

    def __init__(self, re, im=0):
        self.re, self.im = F(re), F(im)

    def __add__(self, o):
        return G(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return G(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return G(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __neg__(self):
        return G(-self.re, -self.im)

    def __str__(self):
        return f"({self.re}, {self.im})"


def formula_matrix(d, k):
    m = []
    for i in range(d):
        row = []
        for j in range(d):
            re = F((i * 7 + j * 3 + k * 5) % 11 - 5, 1 + (i + j + k) % 3)
            im = F((i + 2 * j + k) % 3 - 1)
            row.append(G(re, im))
        m.append(row)
    return m


def sign(p):
    s, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def q_literal(args):
    n = len(args)
    total = G(0)
    for p in permutations(range(2 * n)):
        term = G(sign(p))
        for i, a in enumerate(args):
            x, y = p[2 * i], p[2 * i + 1]
            term = term * (a[x][y] - a[y][x])
            if term.re == 0 and term.im == 0:
                break
        total = total + term
    return total


def det(m):
    n = len(m)
    total = G(0)
    for p in permutations(range(n)):
        term = G(sign(p))
        for i in range(n):
            term = term * m[i][p[i]]
        total = total + term
    return total


def main():
    for n in (1, 2, 3, 4):
        args = [formula_matrix(2 * n, k) for k in range(n)]
        print(f"Q mixed n={n}: {q_literal(args)}")
    for n in (1, 2, 3, 4):
        a = formula_matrix(2 * n, 7)
        print(f"Q_n n={n}: {q_literal([a] * n)}")
    for d in (3, 4, 5):
        print(f"det d={d}: {det(formula_matrix(d, 2))}")


if __name__ == "__main__":
    main()
