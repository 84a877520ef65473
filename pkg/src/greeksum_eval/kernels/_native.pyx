# cython: boundscheck=False, wraparound=False
"""Compiled LCS kernel: rolling two-row dynamic program over token ids."""

from libc.stdlib cimport free, malloc


def lcs_length_ids(const int[::1] a, const int[::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    cdef Py_ssize_t i, j
    cdef int ai, up, left, result
    if n == 0 or m == 0:
        return 0
    cdef int* prev = <int*> malloc((m + 1) * sizeof(int))
    cdef int* cur = <int*> malloc((m + 1) * sizeof(int))
    cdef int* tmp
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        with nogil:
            for j in range(m + 1):
                prev[j] = 0
            cur[0] = 0
            for i in range(1, n + 1):
                ai = a[i - 1]
                for j in range(1, m + 1):
                    if ai == b[j - 1]:
                        cur[j] = prev[j - 1] + 1
                    else:
                        up = prev[j]
                        left = cur[j - 1]
                        cur[j] = up if up >= left else left
                tmp = prev
                prev = cur
                cur = tmp
            result = prev[m]
        return result
    finally:
        free(prev)
        free(cur)
