# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled edit kernels; see ``_pykernels`` for the reference versions."""

from libc.stdlib cimport malloc, free


def damerau_neighbors(str word, str alphabet="abcdefghijklmnopqrstuvwxyz"):
    cdef Py_ssize_t n = len(word), k = len(alphabet), i, j
    cdef set out = set()
    cdef str head, tail, c
    for i in range(n):
        out.add(word[:i] + word[i + 1:])
    for i in range(n + 1):
        head = word[:i]
        tail = word[i:]
        for j in range(k):
            out.add(head + alphabet[j] + tail)
    for i in range(n):
        head = word[:i]
        tail = word[i + 1:]
        c = word[i]
        for j in range(k):
            if alphabet[j] != c:
                out.add(head + alphabet[j] + tail)
    for i in range(n - 1):
        if word[i] != word[i + 1]:
            out.add(word[:i] + word[i + 1] + word[i] + word[i + 2:])
    out.discard(word)
    return out


def osa_distance(str a, str b):
    cdef Py_ssize_t n = len(a), m = len(b), i, j
    cdef Py_UCS4 ai
    cdef int cost, d, t
    cdef int *prev2
    cdef int *prev
    cdef int *cur
    cdef int *tmp
    cdef int *buf = <int *> malloc(3 * (m + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    prev2, prev, cur = buf, buf + (m + 1), buf + 2 * (m + 1)
    try:
        for j in range(m + 1):
            prev[j] = j
            prev2[j] = 0
        for i in range(1, n + 1):
            cur[0] = i
            ai = a[i - 1]
            for j in range(1, m + 1):
                cost = 0 if ai == b[j - 1] else 1
                d = prev[j] + 1
                t = cur[j - 1] + 1
                if t < d:
                    d = t
                t = prev[j - 1] + cost
                if t < d:
                    d = t
                if i > 1 and j > 1 and ai == b[j - 2] and a[i - 2] == b[j - 1]:
                    t = prev2[j - 2] + 1
                    if t < d:
                        d = t
                cur[j] = d
            tmp = prev2
            prev2 = prev
            prev = cur
            cur = tmp
        return prev[m]
    finally:
        free(buf)
