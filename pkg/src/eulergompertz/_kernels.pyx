# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed integer polynomial kernels.

Same contracts as ``_pykernels``; Python ints go in and come out, all
intermediate arithmetic runs on ``mpz_t`` arrays.
"""

from libc.stdlib cimport malloc, free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct *mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    void mpz_add(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_sub(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_mul_si(mpz_ptr, mpz_ptr, long)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_addmul_ui(mpz_ptr, mpz_ptr, unsigned long)
    void mpz_submul_ui(mpz_ptr, mpz_ptr, unsigned long)
    void mpz_neg(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_import(mpz_ptr, size_t, int, size_t, int, size_t, const void *)
    void *mpz_export(void *, size_t *, int, size_t, int, size_t, mpz_ptr)


cdef mpz_ptr _alloc(Py_ssize_t n) except NULL:
    cdef Py_ssize_t i
    cdef mpz_ptr arr = <mpz_ptr>malloc((n if n > 0 else 1) * sizeof(__mpz_struct))
    if arr == NULL:
        raise MemoryError()
    for i in range(n):
        mpz_init(&arr[i])
    return arr


cdef void _release(mpz_ptr arr, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n):
        mpz_clear(&arr[i])
    free(arr)


cdef int _load(mpz_ptr z, object x) except -1:
    cdef bytes raw
    cdef size_t nbytes
    x = int(x)
    if x == 0:
        mpz_set_si(z, 0)
        return 0
    neg = x < 0
    if neg:
        x = -x
    nbytes = (x.bit_length() + 7) >> 3
    raw = x.to_bytes(nbytes, "little")
    mpz_import(z, nbytes, -1, 1, 0, 0, <const char *>raw)
    if neg:
        mpz_neg(z, z)
    return 0


cdef object _store(mpz_ptr z):
    cdef int sign = mpz_sgn(z)
    cdef size_t count = 0
    cdef size_t nbytes
    cdef char *buf
    if sign == 0:
        return 0
    nbytes = (mpz_sizeinbase(z, 2) + 7) >> 3
    buf = <char *>malloc(nbytes)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_export(buf, &count, -1, 1, 0, 0, z)
        value = int.from_bytes(buf[:count], "little")
    finally:
        free(buf)
    return -value if sign < 0 else value


cdef mpz_ptr _load_list(object seq, Py_ssize_t n) except NULL:
    cdef mpz_ptr arr = _alloc(n)
    cdef Py_ssize_t i
    try:
        for i in range(n):
            _load(&arr[i], seq[i])
    except BaseException:
        _release(arr, n)
        raise
    return arr


cdef list _store_list(mpz_ptr arr, Py_ssize_t start, Py_ssize_t stop):
    cdef Py_ssize_t i
    return [_store(&arr[i]) for i in range(start, stop)]


def poly_mul(a, b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return []
    cdef mpz_ptr pa = _load_list(a, la)
    cdef mpz_ptr pb = _load_list(b, lb)
    cdef mpz_ptr out = _alloc(la + lb - 1)
    try:
        for i in range(la):
            if mpz_sgn(&pa[i]) == 0:
                continue
            for j in range(lb):
                mpz_addmul(&out[i + j], &pa[i], &pb[j])
        return _store_list(out, 0, la + lb - 1)
    finally:
        _release(pa, la)
        _release(pb, lb)
        _release(out, la + lb - 1)


def divmod_monic(num, den):
    cdef Py_ssize_t dl = len(den), nl = len(num), ql, rl, i, j
    if dl == 0 or den[dl - 1] != 1:
        raise ValueError("divisor must be monic")
    ql = nl - dl + 1
    rl = nl if nl > dl - 1 else dl - 1
    cdef mpz_ptr rem = _alloc(rl)
    cdef mpz_ptr pd = _load_list(den, dl)
    cdef mpz_ptr quo
    try:
        for i in range(nl):
            _load(&rem[i], num[i])
        if ql <= 0:
            return [], _store_list(rem, 0, dl - 1)
        quo = _alloc(ql)
        try:
            for i in range(ql - 1, -1, -1):
                mpz_set(&quo[i], &rem[i + dl - 1])
                if mpz_sgn(&quo[i]) == 0:
                    continue
                for j in range(dl - 1):
                    mpz_submul(&rem[i + j], &quo[i], &pd[j])
            return _store_list(quo, 0, ql), _store_list(rem, 0, dl - 1)
        finally:
            _release(quo, ql)
    finally:
        _release(rem, rl)
        _release(pd, dl)


def eval_at_nonpositive(poly, Py_ssize_t count):
    cdef Py_ssize_t n = len(poly), m, i
    cdef mpz_ptr pp = _load_list(poly, n)
    cdef mpz_ptr acc = _alloc(1)
    cdef list out = []
    try:
        for m in range(count):
            mpz_set_si(acc, 0)
            for i in range(n - 1, -1, -1):
                mpz_mul_si(acc, acc, -m)
                mpz_add(acc, acc, &pp[i])
            out.append(_store(acc))
        return out
    finally:
        _release(pp, n)
        _release(acc, 1)


def pole_quotient_sum(weights):
    cdef Py_ssize_t top = len(weights) - 1, k, i
    if top <= 0:
        return []
    cdef mpz_ptr w = _load_list(weights, top + 1)
    cdef mpz_ptr acc = _alloc(top)
    cdef mpz_ptr rising = _alloc(top + 1)
    cdef mpz_ptr q = _alloc(1)
    try:
        mpz_set_si(&rising[0], 1)
        for k in range(1, top + 1):
            # (s)_k = (s)_{k-1} * (s + k - 1), updated in place from the top
            for i in range(k, 0, -1):
                mpz_mul_si(&rising[i], &rising[i], k - 1)
                mpz_add(&rising[i], &rising[i], &rising[i - 1])
            mpz_mul_si(&rising[0], &rising[0], k - 1)
            if mpz_sgn(&w[k]) == 0:
                continue
            mpz_set_si(q, 1)
            mpz_add(&acc[k - 1], &acc[k - 1], &w[k])
            for i in range(k - 1, 0, -1):
                # q <- rising[i] - k * q
                mpz_mul_si(q, q, -k)
                mpz_add(q, q, &rising[i])
                mpz_addmul(&acc[i - 1], &w[k], q)
        return _store_list(acc, 0, top)
    finally:
        _release(w, top + 1)
        _release(acc, top)
        _release(rising, top + 1)
        _release(q, 1)


def monomial_to_rising(coeffs):
    cdef Py_ssize_t m = len(coeffs), j, l
    if m == 0:
        return []
    cdef mpz_ptr a = _load_list(coeffs, m)
    cdef mpz_ptr out = _alloc(m)
    cdef mpz_ptr row = _alloc(m + 1)
    try:
        mpz_set_si(&row[0], 1)
        for j in range(m):
            if mpz_sgn(&a[j]) != 0:
                for l in range(j + 1):
                    mpz_addmul(&out[l], &a[j], &row[l])
            for l in range(j + 1, 0, -1):
                # row[l] <- row[l-1] - l * row[l]
                mpz_mul_si(&row[l], &row[l], -l)
                mpz_add(&row[l], &row[l], &row[l - 1])
            mpz_set_si(&row[0], 0)
        return _store_list(out, 0, m)
    finally:
        _release(a, m)
        _release(out, m)
        _release(row, m + 1)
