"""Pure-Python versions of the edit kernels.

Used when the compiled ``_kernels`` extension is missing or when
``CTXSPELL_PURE_PYTHON=1`` is set. Both backends must agree exactly.
"""

ASCII_LOWER = "abcdefghijklmnopqrstuvwxyz"


def damerau_neighbors(word, alphabet=ASCII_LOWER):
    """Every string one Damerau operation away from ``word``.

    Covers deletions, insertions and substitutions drawn from ``alphabet``,
    and adjacent transpositions. ``word`` itself is never included.
    """
    n = len(word)
    out = set()
    for i in range(n):
        out.add(word[:i] + word[i + 1:])
    for i in range(n + 1):
        head, tail = word[:i], word[i:]
        for c in alphabet:
            out.add(head + c + tail)
    for i in range(n):
        head, tail = word[:i], word[i + 1:]
        for c in alphabet:
            if c != word[i]:
                out.add(head + c + tail)
    for i in range(n - 1):
        if word[i] != word[i + 1]:
            out.add(word[:i] + word[i + 1] + word[i] + word[i + 2:])
    out.discard(word)
    return out


def osa_distance(a, b):
    """Optimal-string-alignment distance (restricted Damerau-Levenshtein)."""
    n, m = len(a), len(b)
    prev2 = None
    prev = list(range(m + 1))
    for i in range(1, n + 1):
        cur = [i] + [0] * m
        ai = a[i - 1]
        for j in range(1, m + 1):
            cost = 0 if ai == b[j - 1] else 1
            d = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                d = min(d, prev2[j - 2] + 1)
            cur[j] = d
        prev2, prev = prev, cur
    return prev[m]
