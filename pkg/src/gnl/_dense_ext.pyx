# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed dense kernels.

Coefficients are copied into an mpz_t array once, all passes run in place,
and the result is copied back to Python ints.
"""

from libc.stdlib cimport malloc, free
from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.string cimport memset

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_neg(mpz_ptr, mpz_ptr)
    void mpz_sub(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_abs(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_import(mpz_ptr, size_t, int, size_t, int, size_t, const void*)
    void* mpz_export(void*, size_t*, int, size_t, int, size_t, mpz_ptr)


cdef int _load(mpz_ptr z, object v) except -1:
    cdef bytes buf
    cdef int overflow
    if -0x4000000000000000 < v < 0x4000000000000000:
        mpz_set_si(z, <long>v)
        return 0
    a = -v if v < 0 else v
    buf = a.to_bytes((a.bit_length() + 7) // 8, "little")
    mpz_import(z, len(buf), -1, 1, 0, 0, <const char*>buf)
    if v < 0:
        mpz_neg(z, z)
    return 0


cdef object _store(mpz_ptr z):
    cdef size_t count = 0
    cdef int s = mpz_sgn(z)
    cdef char* raw
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    nbytes = (mpz_sizeinbase(z, 2) + 7) // 8
    raw = <char*>malloc(nbytes + 1)
    if raw == NULL:
        raise MemoryError()
    try:
        mpz_export(raw, &count, -1, 1, 0, 0, z)
        out = int.from_bytes(PyBytes_FromStringAndSize(raw, count), "little")
    finally:
        free(raw)
    return -out if s < 0 else out


cdef class _MpzArray:
    cdef __mpz_struct* data
    cdef Py_ssize_t n

    def __cinit__(self, Py_ssize_t n):
        cdef Py_ssize_t i
        self.n = n
        self.data = <__mpz_struct*>malloc(max(n, 1) * sizeof(__mpz_struct))
        if self.data == NULL:
            raise MemoryError()
        for i in range(n):
            mpz_init(&self.data[i])

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.n):
                mpz_clear(&self.data[i])
            free(self.data)

    cdef list tolist(self, Py_ssize_t upto):
        cdef Py_ssize_t i
        while upto > 0 and mpz_sgn(&self.data[upto - 1]) == 0:
            upto -= 1
        return [_store(&self.data[i]) for i in range(upto)]


def trim(coeffs):
    c = list(coeffs)
    while c and c[len(c) - 1] == 0:
        c.pop()
    return c


def mul_one_minus_power(coeffs, long k, long m):
    """Return coeffs * (1 - x^k)^m using m in-place shift-subtract passes."""
    cdef Py_ssize_t i, size, top, n0
    cdef long p
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    c = trim(coeffs)
    if not c or m == 0:
        return c
    n0 = len(c)
    size = n0 + k * m
    arr = _MpzArray(size)
    for i in range(n0):
        _load(&arr.data[i], c[i])
    top = n0
    for p in range(m):
        top += k
        i = top - 1
        while i >= k:
            mpz_sub(&arr.data[i], &arr.data[i], &arr.data[i - k])
            i -= 1
    return arr.tolist(size)


def mul_dense(a, b):
    cdef Py_ssize_t i, j, na, nb
    a = trim(a)
    b = trim(b)
    if not a or not b:
        return []
    na = len(a)
    nb = len(b)
    A = _MpzArray(na)
    B = _MpzArray(nb)
    out = _MpzArray(na + nb - 1)
    for i in range(na):
        _load(&A.data[i], a[i])
    for j in range(nb):
        _load(&B.data[j], b[j])
    for j in range(nb):
        if mpz_sgn(&B.data[j]) == 0:
            continue
        for i in range(na):
            mpz_addmul(&out.data[i + j], &A.data[i], &B.data[j])
    return out.tolist(na + nb - 1)


def l1_norm(coeffs):
    cdef Py_ssize_t i, n = len(coeffs)
    acc = _MpzArray(2)
    for i in range(n):
        _load(&acc.data[1], coeffs[i])
        mpz_abs(&acc.data[1], &acc.data[1])
        mpz_add(&acc.data[0], &acc.data[0], &acc.data[1])
    return _store(&acc.data[0])
