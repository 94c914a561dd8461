#cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for packed-key integer polynomial arithmetic.

Polynomials are hash tables mapping a packed monomial key (int64, at most
56 bits used) to a 128-bit signed coefficient.  The only operations are the
ones the determinant verification is hot on: fused multiply-accumulate,
scaled addition, and scaled comparison.  All arithmetic is exact; every
entry point guards the 128-bit coefficient range and raises OverflowError
instead of wrapping.
"""

cdef extern from *:
    """
    #include <stdint.h>
    #include <stdlib.h>
    #include <string.h>

    typedef __int128 sdc_acc;

    typedef struct {
        int64_t *keys;   /* -1 marks an empty slot */
        sdc_acc *vals;
        int64_t  cap;    /* power of two */
        int64_t  n;      /* occupied slots (including cancelled-to-zero) */
    } sdc_tab;

    static int sdc_init(sdc_tab *t, int64_t cap_hint) {
        int64_t cap = 16;
        while (cap < cap_hint * 2) cap <<= 1;
        t->keys = (int64_t *)malloc((size_t)cap * sizeof(int64_t));
        t->vals = (sdc_acc *)malloc((size_t)cap * sizeof(sdc_acc));
        if (!t->keys || !t->vals) {
            free(t->keys); free(t->vals);
            t->keys = NULL; t->vals = NULL; t->cap = 0; t->n = 0;
            return -1;
        }
        memset(t->keys, 0xFF, (size_t)cap * sizeof(int64_t));
        t->cap = cap;
        t->n = 0;
        return 0;
    }

    static void sdc_destroy(sdc_tab *t) {
        free(t->keys); free(t->vals);
        t->keys = NULL; t->vals = NULL; t->cap = 0; t->n = 0;
    }

    static inline int64_t sdc_slot(const sdc_tab *t, int64_t key) {
        uint64_t h = (uint64_t)key * 11400714819323198485ULL;
        int64_t mask = t->cap - 1;
        int64_t i = (int64_t)(h >> 8) & mask;
        while (t->keys[i] != -1 && t->keys[i] != key)
            i = (i + 1) & mask;
        return i;
    }

    static int sdc_grow(sdc_tab *t) {
        sdc_tab nt;
        int64_t i;
        nt.cap = t->cap << 1;
        nt.keys = (int64_t *)malloc((size_t)nt.cap * sizeof(int64_t));
        nt.vals = (sdc_acc *)malloc((size_t)nt.cap * sizeof(sdc_acc));
        if (!nt.keys || !nt.vals) { free(nt.keys); free(nt.vals); return -1; }
        memset(nt.keys, 0xFF, (size_t)nt.cap * sizeof(int64_t));
        nt.n = 0;
        for (i = 0; i < t->cap; i++) {
            if (t->keys[i] != -1 && t->vals[i] != 0) {
                int64_t j = sdc_slot(&nt, t->keys[i]);
                nt.keys[j] = t->keys[i];
                nt.vals[j] = t->vals[i];
                nt.n++;
            }
        }
        sdc_destroy(t);
        *t = nt;
        return 0;
    }

    static inline int sdc_add(sdc_tab *t, int64_t key, sdc_acc v) {
        int64_t i = sdc_slot(t, key);
        if (t->keys[i] == key) {
            t->vals[i] += v;
            return 0;
        }
        t->keys[i] = key;
        t->vals[i] = v;
        t->n++;
        if (t->n * 5 >= t->cap * 3)
            return sdc_grow(t);
        return 0;
    }

    static int sdc_fma(sdc_tab *acc, const sdc_tab *a,
                       const int64_t *bk, const sdc_acc *bv, int64_t bn,
                       int sign) {
        int64_t ia, ib;
        for (ia = 0; ia < a->cap; ia++) {
            int64_t ka = a->keys[ia];
            sdc_acc va;
            if (ka == -1) continue;
            va = a->vals[ia];
            if (va == 0) continue;
            if (sign < 0) va = -va;
            for (ib = 0; ib < bn; ib++) {
                if (sdc_add(acc, ka + bk[ib], va * bv[ib]))
                    return -1;
            }
        }
        return 0;
    }

    static int sdc_add_scaled(sdc_tab *acc, const sdc_tab *a, sdc_acc c) {
        int64_t i;
        for (i = 0; i < a->cap; i++) {
            if (a->keys[i] == -1 || a->vals[i] == 0) continue;
            if (sdc_add(acc, a->keys[i], a->vals[i] * c))
                return -1;
        }
        return 0;
    }

    static int sdc_maxbits(const sdc_tab *t) {
        sdc_acc m = 0;
        int64_t i;
        int bits = 0;
        for (i = 0; i < t->cap; i++) {
            sdc_acc v;
            if (t->keys[i] == -1) continue;
            v = t->vals[i];
            if (v < 0) v = -v;
            if (v > m) m = v;
        }
        while (m) { bits++; m >>= 1; }
        return bits;
    }

    static int64_t sdc_nnz(const sdc_tab *t) {
        int64_t i, n = 0;
        for (i = 0; i < t->cap; i++)
            if (t->keys[i] != -1 && t->vals[i] != 0) n++;
        return n;
    }

    /* ca * a == cb * b, termwise */
    static int sdc_equal_scaled(const sdc_tab *a, const sdc_tab *b,
                                int64_t ca, int64_t cb) {
        int64_t i;
        if (sdc_nnz(a) != sdc_nnz(b)) return 0;
        for (i = 0; i < a->cap; i++) {
            int64_t j;
            if (a->keys[i] == -1 || a->vals[i] == 0) continue;
            j = sdc_slot((sdc_tab *)b, a->keys[i]);
            if (b->keys[j] != a->keys[i]) return 0;
            if ((sdc_acc)ca * a->vals[i] != (sdc_acc)cb * b->vals[j]) return 0;
        }
        return 1;
    }
    """
    ctypedef long long sdc_acc
    ctypedef struct sdc_tab:
        long long *keys
        sdc_acc *vals
        long long cap
        long long n
    int sdc_init(sdc_tab *t, long long cap_hint)
    void sdc_destroy(sdc_tab *t)
    int sdc_add(sdc_tab *t, long long key, sdc_acc v)
    int sdc_fma(sdc_tab *acc, const sdc_tab *a, const long long *bk,
                const sdc_acc *bv, long long bn, int sign)
    int sdc_add_scaled(sdc_tab *acc, const sdc_tab *a, sdc_acc c)
    int sdc_maxbits(const sdc_tab *t)
    long long sdc_nnz(const sdc_tab *t)
    int sdc_equal_scaled(const sdc_tab *a, const sdc_tab *b,
                         long long ca, long long cb)

from libc.stdlib cimport free, malloc

KEY_LIMIT = 1 << 56          # packed keys must stay below this
_VALUE_BITS_LIMIT = 100      # loaded coefficients; leaves >= 26 bits headroom
_MASK64 = (1 << 64) - 1


cdef sdc_acc _py_to_acc(object v) except? 0:
    cdef bint neg = v < 0
    cdef unsigned long long lo, hi
    cdef sdc_acc r
    if neg:
        v = -v
    if v.bit_length() > _VALUE_BITS_LIMIT:
        raise OverflowError("coefficient does not fit the 128-bit kernel range")
    lo = <unsigned long long> (v & _MASK64)
    hi = <unsigned long long> (v >> 64)
    r = ((<sdc_acc> hi) << 64) | (<sdc_acc> lo)
    return -r if neg else r


cdef object _acc_to_py(sdc_acc v):
    cdef bint neg = v < 0
    cdef unsigned long long lo, hi
    if neg:
        v = -v
    lo = <unsigned long long> (v & ((<sdc_acc> 1 << 64) - 1))
    hi = <unsigned long long> (v >> 64)
    out = (int(hi) << 64) | int(lo)
    return -out if neg else out


cdef class IntPoly:
    """Packed-key integer polynomial backed by the C hash table."""

    cdef sdc_tab t

    def __cinit__(self, long long capacity_hint=8):
        if sdc_init(&self.t, capacity_hint):
            raise MemoryError("IntPoly allocation failed")

    def __dealloc__(self):
        sdc_destroy(&self.t)

    @staticmethod
    def from_dict(dict d):
        cdef IntPoly p = IntPoly(len(d) + 1)
        cdef long long key
        for k, v in d.items():
            key = k
            if key < 0 or key >= KEY_LIMIT:
                raise ValueError("packed key out of kernel range")
            if v:
                if sdc_add(&p.t, key, _py_to_acc(v)):
                    raise MemoryError("IntPoly growth failed")
        return p

    def to_dict(self):
        cdef dict out = {}
        cdef long long i
        for i in range(self.t.cap):
            if self.t.keys[i] != -1 and self.t.vals[i] != 0:
                out[self.t.keys[i]] = _acc_to_py(self.t.vals[i])
        return out

    def nnz(self):
        return sdc_nnz(&self.t)

    def is_zero(self):
        return sdc_nnz(&self.t) == 0

    def max_bits(self):
        return sdc_maxbits(&self.t)

    def copy(self):
        cdef IntPoly p = IntPoly(sdc_nnz(&self.t) + 1)
        cdef long long i
        for i in range(self.t.cap):
            if self.t.keys[i] != -1 and self.t.vals[i] != 0:
                if sdc_add(&p.t, self.t.keys[i], self.t.vals[i]):
                    raise MemoryError("IntPoly growth failed")
        return p

    def fma(self, IntPoly a, IntPoly b, int sign):
        """self += sign * a * b   (sign must be +1 or -1)."""
        cdef long long *bk
        cdef sdc_acc *bv
        cdef long long bn, i, j
        cdef int bits_a, bits_b
        if sign != 1 and sign != -1:
            raise ValueError("sign must be +1 or -1")
        if a is self or b is self:
            raise ValueError("fma operands must not alias the accumulator")
        bits_a = sdc_maxbits(&a.t)
        bits_b = sdc_maxbits(&b.t)
        # worst case: |acc| <= max|acc| + min(na, nb) * max|a| * max|b|
        if bits_a + bits_b + 34 > 126 or sdc_maxbits(&self.t) > 124:
            raise OverflowError("fma would risk exceeding the 128-bit range")
        bn = sdc_nnz(&b.t)
        if bn == 0 or sdc_nnz(&a.t) == 0:
            return
        bk = <long long *> malloc(bn * sizeof(long long))
        bv = <sdc_acc *> malloc(bn * sizeof(sdc_acc))
        if not bk or not bv:
            free(bk); free(bv)
            raise MemoryError("fma scratch allocation failed")
        j = 0
        for i in range(b.t.cap):
            if b.t.keys[i] != -1 and b.t.vals[i] != 0:
                bk[j] = b.t.keys[i]
                bv[j] = b.t.vals[i]
                j += 1
        if sdc_fma(&self.t, &a.t, bk, bv, bn, sign):
            free(bk); free(bv)
            raise MemoryError("IntPoly growth failed")
        free(bk); free(bv)

    def add_scaled(self, IntPoly a, object c):
        """self += c * a   for a Python integer c."""
        cdef sdc_acc cc
        if a is self:
            raise ValueError("add_scaled operand must not alias the accumulator")
        if not c:
            return
        cc = _py_to_acc(c)
        if sdc_maxbits(&a.t) + (<object> c).bit_length() + 2 > 126:
            raise OverflowError("add_scaled would risk exceeding the 128-bit range")
        if sdc_add_scaled(&self.t, &a.t, cc):
            raise MemoryError("IntPoly growth failed")

    def equal_scaled(self, object ca, IntPoly other, object cb):
        """True iff ca * self == cb * other termwise (ca, cb Python ints)."""
        cdef long long va, vb
        if ca.bit_length() > 55 or cb.bit_length() > 55:
            raise OverflowError("comparison scalars out of range")
        if sdc_maxbits(&self.t) + ca.bit_length() > 126:
            raise OverflowError("comparison would overflow")
        if sdc_maxbits(&other.t) + cb.bit_length() > 126:
            raise OverflowError("comparison would overflow")
        va = ca
        vb = cb
        return bool(sdc_equal_scaled(&self.t, &other.t, va, vb))

    def get(self, long long key):
        cdef long long i
        for i in range(self.t.cap):
            if self.t.keys[i] == key:
                return _acc_to_py(self.t.vals[i])
        return 0

    def max_key(self):
        """Largest key with a nonzero value; None if zero polynomial."""
        cdef long long best = -1
        cdef long long i
        for i in range(self.t.cap):
            if self.t.keys[i] != -1 and self.t.vals[i] != 0:
                if self.t.keys[i] > best:
                    best = self.t.keys[i]
        return None if best < 0 else best
