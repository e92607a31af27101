# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as chromarank._kernels_py.

Permutations cross the boundary as tuples of ints.  Inside the closure
and orbit routines each permutation is packed into a big-endian bytes
buffer, so bytes comparison and hashing match tuple order while the
inner loops run on raw C arrays.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport free, malloc

BACKEND = "compiled"

ctypedef unsigned int u32


cdef void _pack(const u32* src, Py_ssize_t n, unsigned char* dst) noexcept:
    cdef Py_ssize_t i
    cdef u32 v
    for i in range(n):
        v = src[i]
        dst[4 * i] = <unsigned char>(v >> 24)
        dst[4 * i + 1] = <unsigned char>((v >> 16) & 0xFF)
        dst[4 * i + 2] = <unsigned char>((v >> 8) & 0xFF)
        dst[4 * i + 3] = <unsigned char>(v & 0xFF)


cdef void _unpack(const unsigned char* src, Py_ssize_t n, u32* dst) noexcept:
    cdef Py_ssize_t i
    for i in range(n):
        dst[i] = (
            (<u32>src[4 * i] << 24)
            | (<u32>src[4 * i + 1] << 16)
            | (<u32>src[4 * i + 2] << 8)
            | <u32>src[4 * i + 3]
        )


cdef int _fill(object seq, u32* buf, Py_ssize_t n) except -1:
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <u32>seq[i]
    return 0


cdef object _to_tuple(const u32* buf, Py_ssize_t n):
    cdef object out = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object v
    for i in range(n):
        v = <object>buf[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


cdef object _bytes_to_tuple(object data, Py_ssize_t n, u32* scratch):
    _unpack(<const unsigned char*>PyBytes_AS_STRING(data), n, scratch)
    return _to_tuple(scratch, n)


cdef u32* _gen_block(object gens, Py_ssize_t d, Py_ssize_t* count) except NULL:
    """All generators concatenated into one malloc'd array of rows."""
    cdef Py_ssize_t ng = len(gens)
    cdef Py_ssize_t cells = ng * d if ng > 0 else 1
    cdef u32* block = <u32*>malloc(cells * sizeof(u32))
    if block == NULL:
        raise MemoryError()
    cdef Py_ssize_t k
    try:
        for k in range(ng):
            _fill(gens[k], block + k * d, d)
    except BaseException:
        free(block)
        raise
    count[0] = ng
    return block


def compose(a, b):
    """a then b: the permutation mapping i to b[a[i]]."""
    cdef Py_ssize_t n = len(a)
    cdef u32* buf = <u32*>malloc(3 * n * sizeof(u32))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        _fill(a, buf, n)
        _fill(b, buf + n, n)
        for i in range(n):
            buf[2 * n + i] = buf[n + buf[i]]
        return _to_tuple(buf + 2 * n, n)
    finally:
        free(buf)


def inverse(a):
    cdef Py_ssize_t n = len(a)
    cdef u32* buf = <u32*>malloc(2 * n * sizeof(u32))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        _fill(a, buf, n)
        for i in range(n):
            buf[n + buf[i]] = <u32>i
        return _to_tuple(buf + n, n)
    finally:
        free(buf)


def conjugate(x, g):
    """x conjugated by g, i.e. inverse(g) * x * g."""
    cdef Py_ssize_t n = len(x)
    cdef u32* buf = <u32*>malloc(3 * n * sizeof(u32))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t j
    try:
        _fill(x, buf, n)
        _fill(g, buf + n, n)
        for j in range(n):
            buf[2 * n + buf[n + j]] = buf[n + buf[j]]
        return _to_tuple(buf + 2 * n, n)
    finally:
        free(buf)


def commutes(a, b):
    cdef Py_ssize_t n = len(a)
    cdef u32* buf = <u32*>malloc(2 * n * sizeof(u32))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef bint ok = True
    try:
        _fill(a, buf, n)
        _fill(b, buf + n, n)
        for i in range(n):
            if buf[buf[n + i]] != buf[n + buf[i]]:
                ok = False
                break
        return bool(ok)
    finally:
        free(buf)


cdef unsigned long long _gcd(unsigned long long x, unsigned long long y) noexcept:
    cdef unsigned long long t
    while y:
        t = x % y
        x = y
        y = t
    return x


def element_order(a):
    cdef Py_ssize_t n = len(a)
    cdef u32* buf = <u32*>malloc(n * sizeof(u32))
    if buf == NULL:
        raise MemoryError()
    cdef unsigned char* seen = <unsigned char*>malloc(n)
    if seen == NULL:
        free(buf)
        raise MemoryError()
    cdef unsigned long long order = 1, length
    cdef Py_ssize_t i, j
    try:
        _fill(a, buf, n)
        for i in range(n):
            seen[i] = 0
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = buf[j]
                length += 1
            order = order // _gcd(order, length) * length
        return int(order)
    finally:
        free(buf)
        free(seen)


def close_group(gens, limit):
    """All products of the generators, sorted; None once the count passes limit.

    Breadth-first closure from the identity; the generator list must be
    nonempty and of uniform degree.
    """
    cdef Py_ssize_t d = len(gens[0])
    cdef Py_ssize_t ng = 0
    cdef u32* block = _gen_block(gens, d, &ng)
    cdef u32* x = <u32*>malloc(2 * d * sizeof(u32))
    cdef unsigned char* packed = <unsigned char*>malloc(4 * d)
    cdef Py_ssize_t cap = <Py_ssize_t>limit
    cdef Py_ssize_t i, k, qi
    cdef u32* y = NULL
    cdef object key, out
    cdef list queue
    cdef set seen
    if x == NULL or packed == NULL:
        free(block)
        if x != NULL:
            free(x)
        if packed != NULL:
            free(packed)
        raise MemoryError()
    y = x + d
    try:
        for i in range(d):
            x[i] = <u32>i
        _pack(x, d, packed)
        key = PyBytes_FromStringAndSize(<char*>packed, 4 * d)
        seen = {key}
        queue = [key]
        qi = 0
        while qi < len(queue):
            key = queue[qi]
            qi += 1
            _unpack(<const unsigned char*>PyBytes_AS_STRING(key), d, x)
            for k in range(ng):
                for i in range(d):
                    y[i] = block[k * d + x[i]]
                _pack(y, d, packed)
                cand = PyBytes_FromStringAndSize(<char*>packed, 4 * d)
                if cand not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(cand)
                    queue.append(cand)
        queue.sort()
        out = [_bytes_to_tuple(q, d, x) for q in queue]
        return out
    finally:
        free(block)
        free(x)
        free(packed)


def conjugacy_orbit(x, gens):
    """Orbit of x under conjugation by the generators, in discovery order."""
    cdef Py_ssize_t d = len(x)
    cdef Py_ssize_t ng = 0
    cdef u32* block = _gen_block(gens, d, &ng)
    cdef u32* bufs = <u32*>malloc(2 * d * sizeof(u32))
    cdef unsigned char* packed = <unsigned char*>malloc(4 * d)
    cdef u32* cur = NULL
    cdef u32* nxt = NULL
    cdef Py_ssize_t i, k, qi
    cdef object key, cand
    cdef list queue
    cdef set orbit
    if bufs == NULL or packed == NULL:
        free(block)
        if bufs != NULL:
            free(bufs)
        if packed != NULL:
            free(packed)
        raise MemoryError()
    cur = bufs
    nxt = bufs + d
    try:
        _fill(x, cur, d)
        _pack(cur, d, packed)
        key = PyBytes_FromStringAndSize(<char*>packed, 4 * d)
        orbit = {key}
        queue = [key]
        qi = 0
        while qi < len(queue):
            key = queue[qi]
            qi += 1
            _unpack(<const unsigned char*>PyBytes_AS_STRING(key), d, cur)
            for k in range(ng):
                for i in range(d):
                    nxt[block[k * d + i]] = block[k * d + cur[i]]
                _pack(nxt, d, packed)
                cand = PyBytes_FromStringAndSize(<char*>packed, 4 * d)
                if cand not in orbit:
                    orbit.add(cand)
                    queue.append(cand)
        return [_bytes_to_tuple(q, d, cur) for q in queue]
    finally:
        free(block)
        free(bufs)
        free(packed)


def tuple_orbit(tup, gens):
    """Orbit of a tuple of permutations under simultaneous conjugation."""
    cdef Py_ssize_t h = len(tup)
    if h == 0:
        return [()]
    cdef Py_ssize_t d = len(tup[0])
    cdef Py_ssize_t ng = 0
    cdef u32* block = _gen_block(gens, d, &ng)
    cdef u32* cur = <u32*>malloc(2 * h * d * sizeof(u32))
    cdef unsigned char* packed = <unsigned char*>malloc(4 * h * d)
    cdef u32* nxt = NULL
    cdef Py_ssize_t i, k, c, qi
    cdef object key, cand, coords
    cdef list queue, out
    cdef set orbit
    if cur == NULL or packed == NULL:
        free(block)
        if cur != NULL:
            free(cur)
        if packed != NULL:
            free(packed)
        raise MemoryError()
    nxt = cur + h * d
    try:
        for c in range(h):
            _fill(tup[c], cur + c * d, d)
        _pack(cur, h * d, packed)
        key = PyBytes_FromStringAndSize(<char*>packed, 4 * h * d)
        orbit = {key}
        queue = [key]
        qi = 0
        while qi < len(queue):
            key = queue[qi]
            qi += 1
            _unpack(<const unsigned char*>PyBytes_AS_STRING(key), h * d, cur)
            for k in range(ng):
                for c in range(h):
                    for i in range(d):
                        nxt[c * d + block[k * d + i]] = block[k * d + cur[c * d + i]]
                _pack(nxt, h * d, packed)
                cand = PyBytes_FromStringAndSize(<char*>packed, 4 * h * d)
                if cand not in orbit:
                    orbit.add(cand)
                    queue.append(cand)
        out = []
        for key in queue:
            _unpack(<const unsigned char*>PyBytes_AS_STRING(key), h * d, cur)
            coords = PyTuple_New(h)
            for c in range(h):
                cand = _to_tuple(cur + c * d, d)
                Py_INCREF(cand)
                PyTuple_SET_ITEM(coords, c, cand)
            out.append(coords)
        return out
    finally:
        free(block)
        free(cur)
        free(packed)


def centralizer_filter(elements, targets):
    """Members of elements commuting with every target, input order kept."""
    cdef Py_ssize_t nt = len(targets)
    if nt == 0:
        return list(elements)
    cdef Py_ssize_t d = len(targets[0])
    cdef Py_ssize_t ng = 0
    cdef u32* tblock = _gen_block(targets, d, &ng)
    cdef u32* e = <u32*>malloc(d * sizeof(u32))
    cdef Py_ssize_t i, k
    cdef bint ok
    cdef list out = []
    cdef object elem
    if e == NULL:
        free(tblock)
        raise MemoryError()
    try:
        for elem in elements:
            _fill(elem, e, d)
            ok = True
            for k in range(nt):
                for i in range(d):
                    if e[tblock[k * d + i]] != tblock[k * d + e[i]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(elem)
        return out
    finally:
        free(tblock)
        free(e)


def normalizer_filter(elements, sub_gens, sub_elements):
    """Members of elements conjugating the given subgroup onto itself."""
    cdef Py_ssize_t ns = len(sub_gens)
    if ns == 0:
        return list(elements)
    cdef Py_ssize_t d = len(sub_gens[0])
    cdef Py_ssize_t ng = 0
    cdef u32* sblock = _gen_block(sub_gens, d, &ng)
    cdef u32* g = <u32*>malloc(2 * d * sizeof(u32))
    cdef unsigned char* packed = <unsigned char*>malloc(4 * d)
    cdef u32* y = NULL
    cdef Py_ssize_t i, k
    cdef bint ok
    cdef list out = []
    cdef set sub
    cdef object elem, member
    if g == NULL or packed == NULL:
        free(sblock)
        if g != NULL:
            free(g)
        if packed != NULL:
            free(packed)
        raise MemoryError()
    y = g + d
    try:
        sub = set()
        for member in sub_elements:
            _fill(member, g, d)
            _pack(g, d, packed)
            sub.add(PyBytes_FromStringAndSize(<char*>packed, 4 * d))
        for elem in elements:
            _fill(elem, g, d)
            ok = True
            for k in range(ns):
                for i in range(d):
                    y[g[i]] = g[sblock[k * d + i]]
                _pack(y, d, packed)
                if PyBytes_FromStringAndSize(<char*>packed, 4 * d) not in sub:
                    ok = False
                    break
            if not ok:
                continue
            out.append(elem)
        return out
    finally:
        free(sblock)
        free(g)
        free(packed)