# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""GMP-backed simplex tableau.

Same interface and pivoting decisions as ``_simplex_py.Tableau``; entries
live in a flat ``mpq_t`` array so the pivot loop never touches Python
objects.
"""
from fractions import Fraction

from libc.stdlib cimport malloc, free
from libc.limits cimport LONG_MAX, LONG_MIN
from cpython.mem cimport PyMem_Malloc, PyMem_Free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef __mpq_struct* mpq_ptr

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_set_str(mpq_ptr, const char*, int)
    void mpq_canonicalize(mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_sub(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_div(mpq_ptr, mpq_ptr, mpq_ptr)
    int mpq_cmp(mpq_ptr, mpq_ptr)
    int mpq_cmp_si(mpq_ptr, long, unsigned long)
    int mpq_sgn(mpq_ptr)
    int mpq_equal(mpq_ptr, mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    char* mpz_get_str(char*, int, mpz_ptr)

cdef extern from "stdlib.h":
    void gmp_free "free"(void*)


OPTIMAL = "optimal"
UNBOUNDED = "unbounded"


cdef inline void _load(mpq_ptr q, object v) except *:
    cdef long num, den
    if isinstance(v, int):
        if LONG_MIN < v < LONG_MAX:
            mpq_set_si(q, <long>v, 1)
            return
        mpq_set_str(q, str(v).encode(), 10)
        return
    if not isinstance(v, Fraction):
        v = Fraction(v)
    n = v.numerator
    d = v.denominator
    if LONG_MIN < n < LONG_MAX and 0 < d < LONG_MAX:
        mpq_set_si(q, <long>n, <unsigned long>d)
        return
    mpq_set_str(q, f"{n}/{d}".encode(), 10)
    mpq_canonicalize(q)


cdef object _mpz_to_int(mpz_ptr z):
    cdef char* s
    if mpz_fits_slong_p(z):
        return mpz_get_si(z)
    s = mpz_get_str(NULL, 16, z)
    try:
        return int(s.decode(), 16)
    finally:
        gmp_free(s)


cdef object _store(mpq_ptr q):
    num = _mpz_to_int(mpq_numref(q))
    den = _mpz_to_int(mpq_denref(q))
    if den == 1:
        return Fraction(num)
    return Fraction(num, den)


cdef class Tableau:
    cdef readonly int m
    cdef readonly int n
    cdef readonly long iterations
    cdef public list basis
    cdef __mpq_struct* _t      # m * n
    cdef __mpq_struct* _b      # m
    cdef __mpq_struct* _d      # n, reduced costs during optimize
    cdef __mpq_struct _tmp
    cdef __mpq_struct _f
    cdef int* _nz
    cdef bint _ready

    backend = "gmp"

    def __cinit__(self, rows, rhs, basis):
        self._ready = False
        self.m = len(rows)
        self.n = len(rows[0]) if self.m else 0
        if len(rhs) != self.m or len(basis) != self.m:
            raise ValueError("rhs/basis length does not match row count")
        cdef Py_ssize_t total = <Py_ssize_t>self.m * self.n
        self._t = <__mpq_struct*>PyMem_Malloc(max(total, 1) * sizeof(__mpq_struct))
        self._b = <__mpq_struct*>PyMem_Malloc(max(self.m, 1) * sizeof(__mpq_struct))
        self._d = <__mpq_struct*>PyMem_Malloc(max(self.n, 1) * sizeof(__mpq_struct))
        self._nz = <int*>PyMem_Malloc(max(self.n, 1) * sizeof(int))
        if not self._t or not self._b or not self._d or not self._nz:
            raise MemoryError()
        cdef Py_ssize_t k
        for k in range(total):
            mpq_init(&self._t[k])
        for k in range(self.m):
            mpq_init(&self._b[k])
        for k in range(self.n):
            mpq_init(&self._d[k])
        mpq_init(&self._tmp)
        mpq_init(&self._f)
        self._ready = True
        cdef int i, j
        for i in range(self.m):
            row = rows[i]
            if len(row) != self.n:
                raise ValueError("ragged tableau rows")
            for j in range(self.n):
                v = row[j]
                if v:
                    _load(&self._t[<Py_ssize_t>i * self.n + j], v)
            _load(&self._b[i], rhs[i])
        self.basis = [int(c) for c in basis]
        self.iterations = 0

    def __dealloc__(self):
        cdef Py_ssize_t k
        if self._ready:
            for k in range(<Py_ssize_t>self.m * self.n):
                mpq_clear(&self._t[k])
            for k in range(self.m):
                mpq_clear(&self._b[k])
            for k in range(self.n):
                mpq_clear(&self._d[k])
            mpq_clear(&self._tmp)
            mpq_clear(&self._f)
        PyMem_Free(self._t)
        PyMem_Free(self._b)
        PyMem_Free(self._d)
        PyMem_Free(self._nz)

    cdef inline __mpq_struct* at(self, int i, int j):
        return &self._t[<Py_ssize_t>i * self.n + j]

    def entry(self, int i, int j):
        return _store(self.at(i, j))

    def rhs(self, int i):
        return _store(&self._b[i])

    def column(self, int j):
        return [_store(self.at(i, j)) for i in range(self.m)]

    cdef int _pivot(self, int r, int c) except -1:
        cdef int i, j, k, cnt = 0
        cdef __mpq_struct* prow = self.at(r, 0)
        cdef __mpq_struct* row
        if mpq_sgn(&prow[c]) == 0:
            raise ZeroDivisionError("pivot on a zero entry")
        for j in range(self.n):
            if mpq_sgn(&prow[j]) != 0:
                self._nz[cnt] = j
                cnt += 1
        if mpq_cmp_si(&prow[c], 1, 1) != 0:
            mpq_set(&self._f, &prow[c])
            for k in range(cnt):
                j = self._nz[k]
                mpq_div(&prow[j], &prow[j], &self._f)
            mpq_div(&self._b[r], &self._b[r], &self._f)
        for i in range(self.m):
            if i == r:
                continue
            row = self.at(i, 0)
            if mpq_sgn(&row[c]) == 0:
                continue
            mpq_set(&self._f, &row[c])
            for k in range(cnt):
                j = self._nz[k]
                mpq_mul(&self._tmp, &self._f, &prow[j])
                mpq_sub(&row[j], &row[j], &self._tmp)
            mpq_mul(&self._tmp, &self._f, &self._b[r])
            mpq_sub(&self._b[i], &self._b[i], &self._tmp)
        self.basis[r] = c
        return cnt

    def pivot(self, int r, int c):
        cdef int cnt = self._pivot(r, c)
        return [self._nz[k] for k in range(cnt)]

    cdef void _load_costs(self, cost) except *:
        cdef int i, j
        cdef __mpq_struct* row
        cdef __mpq_struct cb
        for j in range(self.n):
            v = cost[j]
            if v:
                _load(&self._d[j], v)
            else:
                mpq_set_si(&self._d[j], 0, 1)
        mpq_init(&cb)
        try:
            for i in range(self.m):
                v = cost[self.basis[i]]
                if not v:
                    continue
                _load(&cb, v)
                row = self.at(i, 0)
                for j in range(self.n):
                    if mpq_sgn(&row[j]) != 0:
                        mpq_mul(&self._tmp, &cb, &row[j])
                        mpq_sub(&self._d[j], &self._d[j], &self._tmp)
        finally:
            mpq_clear(&cb)

    def reduced_costs(self, cost):
        self._load_costs(cost)
        return [_store(&self._d[j]) for j in range(self.n)]

    def objective(self, cost):
        s = Fraction(0)
        for i in range(self.m):
            v = cost[self.basis[i]]
            if v:
                s += Fraction(v) * _store(&self._b[i])
        return s

    def duals(self, cost, unit_cols):
        out = []
        cdef int i
        for k in unit_cols:
            s = Fraction(0)
            for i in range(self.m):
                cb = cost[self.basis[i]]
                if cb:
                    e = self.at(i, k)
                    if mpq_sgn(e) != 0:
                        s += Fraction(cb) * _store(e)
            out.append(s)
        return out

    def primal(self):
        x = [Fraction(0)] * self.n
        for i in range(self.m):
            x[self.basis[i]] = _store(&self._b[i])
        return x

    def optimize(self, cost, allowed, long max_iter=1_000_000):
        cdef int i, j, k, e, r, cnt, bi, br
        cdef long it
        cdef __mpq_struct* prow
        cdef __mpq_struct* a
        cdef __mpq_struct best
        cdef __mpq_struct ratio
        cdef int cmpv
        cdef char* ok = <char*>PyMem_Malloc(max(self.n, 1))
        cdef int* basis = <int*>PyMem_Malloc(max(self.m, 1) * sizeof(int))
        if not ok or not basis:
            raise MemoryError()
        mpq_init(&best)
        mpq_init(&ratio)
        try:
            for j in range(self.n):
                ok[j] = 1 if allowed[j] else 0
            for i in range(self.m):
                basis[i] = self.basis[i]
            self._load_costs(cost)
            for it in range(max_iter):
                e = -1
                for j in range(self.n):
                    if ok[j] and mpq_sgn(&self._d[j]) < 0:
                        e = j
                        break
                if e < 0:
                    return OPTIMAL, -1
                r = -1
                for i in range(self.m):
                    a = self.at(i, e)
                    if mpq_sgn(a) > 0:
                        mpq_div(&ratio, &self._b[i], a)
                        if r < 0:
                            cmpv = -1
                        else:
                            cmpv = mpq_cmp(&ratio, &best)
                        if cmpv < 0 or (cmpv == 0 and basis[i] < basis[r]):
                            mpq_set(&best, &ratio)
                            r = i
                if r < 0:
                    return UNBOUNDED, e
                cnt = self._pivot(r, e)
                basis[r] = e
                prow = self.at(r, 0)
                mpq_set(&self._f, &self._d[e])
                for k in range(cnt):
                    j = self._nz[k]
                    mpq_mul(&self._tmp, &self._f, &prow[j])
                    mpq_sub(&self._d[j], &self._d[j], &self._tmp)
                self.iterations += 1
            raise RuntimeError("simplex iteration limit reached")
        finally:
            mpq_clear(&best)
            mpq_clear(&ratio)
            PyMem_Free(ok)
            PyMem_Free(basis)
