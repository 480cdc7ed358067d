"""Writes b-file snapshots of the checked integer sequences.

Each sequence is computed from its own published definition, independently
of the Rust implementation. Run from this directory: python3 generate.py
"""
from math import comb, factorial

TERMS = 40


def a001147(i):  # double factorial of odd numbers, (2i-1)!!
    r = 1
    for k in range(1, 2 * i, 2):
        r *= k
    return r


def a001710(i):  # order of the alternating group: i!/2, with a(0) = a(1) = 1
    return 1 if i < 2 else factorial(i) // 2


_a096351 = {0: 1, 1: 1}


def a096351(i):  # knockout tournament seedings
    if i not in _a096351:
        h = i // 2
        v = comb(i, h) * a096351(h) * a096351(i - h)
        _a096351[i] = v // 2 if i % 2 == 0 else v
    return _a096351[i]


def a268289(i):  # partial sums of (ones - zeros) in binary expansions
    total = 0
    for k in range(1, i + 1):
        b = bin(k)[2:]
        total += b.count("1") - b.count("0")
    return total


_a000992 = {1: 1}


def a000992(i):  # half-Catalan numbers
    if i not in _a000992:
        _a000992[i] = sum(a000992(k) * a000992(i - k) for k in range(1, i // 2 + 1))
    return _a000992[i]


def a002620(i):  # quarter-squares
    return i * i // 4


def a011371(i):  # exponent of the highest power of 2 dividing i!
    e, p = 0, 2
    while p <= i:
        e += i // p
        p *= 2
    return e


def a049606(i):  # largest odd divisor of i!
    f = factorial(i)
    while f % 2 == 0:
        f //= 2
    return f


SEQUENCES = {
    "A001147": (a001147, 0),
    "A001710": (a001710, 0),
    "A096351": (a096351, 1),
    "A268289": (a268289, 0),
    "A000992": (a000992, 1),
    "A002620": (a002620, 0),
    "A011371": (a011371, 0),
    "A049606": (a049606, 0),
}

if __name__ == "__main__":
    for name, (f, offset) in SEQUENCES.items():
        with open(f"b{name[1:]}.txt", "w") as out:
            out.write(f"# {name}, terms {offset}..{offset + TERMS - 1}\n")
            out.write("# generated by generate.py from the sequence definition\n")
            for i in range(offset, offset + TERMS):
                out.write(f"{i} {f(i)}\n")
