"""
The linear category Sh^Lie.

Objects are [n] = {0, ..., n}. A basis of Hom([n], [m]) is the set of
m-split (n+1)-tuples: ordered partitions (B_0 | ... | B_m) of [n] into
combs whose first entries increase. Split tuples are tuples of tuples.
"""

from __future__ import annotations

import hashlib
import os
import threading
from functools import lru_cache
from itertools import permutations, product

from .lie import fold_comb
from .linalg import SparseMatrix

CACHE_FORMAT = "shlie-hom-cache 1"
CACHE_ENV = "SHLIE_CACHE_DIR"


class ShuffleConditionError(RuntimeError):
    """A composite violated the split-tuple conditions (should be impossible)."""

    def __init__(self, message, dump=None):
        super().__init__(message)
        self.dump = dump or {}


# ------------------------------------------------------------ split tuples


def split_tuple_error(blocks):
    """Return None if `blocks` is a split tuple, else a reason string."""
    if not blocks:
        return "no blocks"
    seen = []
    for b in blocks:
        if not b:
            return "empty block"
        seen.extend(b)
    if sorted(seen) != list(range(len(seen))):
        return "blocks do not partition {0..%d}" % (len(seen) - 1)
    for b in blocks:
        if b[0] != min(b):
            return "block %s does not start with its minimum" % (b,)
    firsts = [b[0] for b in blocks]
    if any(x >= y for x, y in zip(firsts, firsts[1:])):
        return "first entries %s not increasing" % (firsts,)
    return None


def make_split_tuple(blocks):
    blocks = tuple(tuple(int(x) for x in b) for b in blocks)
    reason = split_tuple_error(blocks)
    if reason:
        raise ValueError("not a split tuple %s: %s" % (format_split_tuple(blocks), reason))
    return blocks


def source_of(blocks):
    return sum(len(b) for b in blocks) - 1


def target_of(blocks):
    return len(blocks) - 1


def format_split_tuple(blocks):
    return "|".join(",".join(str(x) for x in b) for b in blocks)


def parse_split_tuple(text):
    text = text.strip().strip("()").replace(" ", "")
    return make_split_tuple([[int(x) for x in part.split(",")] for part in text.split("|")])


def basis_key(blocks):
    # bars sort after every label: (0,1|2) < (0,2|1) < (0|1,2)
    bar = source_of(blocks) + 1
    key = []
    for b in blocks:
        key.extend(b)
        key.append(bar)
    return tuple(key)


def _set_partitions(n, parts):
    # partitions of {0..n} into `parts` blocks, blocks listed by increasing minimum
    def rec(k, blocks):
        if k > n:
            if len(blocks) == parts:
                yield [list(b) for b in blocks]
            return
        if parts - len(blocks) > n - k + 1:
            return
        for b in blocks:
            b.append(k)
            yield from rec(k + 1, blocks)
            b.pop()
        if len(blocks) < parts:
            blocks.append([k])
            yield from rec(k + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def _generate(n, m):
    if m > n or m < 0 or n < 0:
        return ()
    out = []
    for blocks in _set_partitions(n, m + 1):
        choices = [[(b[0],) + p for p in permutations(b[1:])] for b in blocks]
        out.extend(product(*choices))
    out.sort(key=basis_key)
    return tuple(out)


# ------------------------------------------------------------ basis cache


class HomCache:
    """Memoizes hom-space bases, optionally persisted per (n, m) on disk.

    Files carry a format line, the package version, the field and a sha256
    checksum; anything that fails to verify is rebuilt.
    """

    def __init__(self, directory=None, field_name="rationals"):
        self.directory = directory
        self.field_name = field_name
        self._bases = {}
        self._index = {}
        self._lock = threading.Lock()
        self.stats = {"memory_hits": 0, "disk_hits": 0, "built": 0, "rebuilt_corrupt": 0}

    def path(self, n, m):
        from . import __version__

        name = "hom-v%s-%s-n%d-m%d.txt" % (__version__, self.field_name.replace(":", "_"), n, m)
        return os.path.join(self.directory, name)

    def basis(self, n, m):
        key = (n, m)
        got = self._bases.get(key)
        if got is not None:
            self.stats["memory_hits"] += 1
            return got
        with self._lock:
            got = self._bases.get(key)
            if got is not None:
                return got
            got = self._load(n, m) if self.directory else None
            if got is None:
                got = _generate(n, m)
                self.stats["built"] += 1
                if self.directory:
                    self._store(n, m, got)
            else:
                self.stats["disk_hits"] += 1
            self._bases[key] = got
            return got

    def index(self, n, m):
        key = (n, m)
        got = self._index.get(key)
        if got is None:
            got = {b: i for i, b in enumerate(self.basis(n, m))}
            self._index[key] = got
        return got

    def _header(self, n, m, count):
        from . import __version__

        return [CACHE_FORMAT, "version %s" % __version__, "field %s" % self.field_name,
                "n %d" % n, "m %d" % m, "count %d" % count]

    def _store(self, n, m, basis):
        lines = self._header(n, m, len(basis)) + ["tuple " + format_split_tuple(b) for b in basis]
        body = "\n".join(lines) + "\n"
        digest = hashlib.sha256(body.encode()).hexdigest()
        os.makedirs(self.directory, exist_ok=True)
        path = self.path(n, m)
        tmp = "%s.%d.tmp" % (path, os.getpid())
        with open(tmp, "w") as f:
            f.write(body + "checksum %s\n" % digest)
        os.replace(tmp, path)

    def _load(self, n, m):
        path = self.path(n, m)
        if not os.path.exists(path):
            return None
        try:
            basis = read_cache_file(path, self._header(n, m, 0)[:-1])
        except (ValueError, OSError):
            basis = None
        if basis is None:
            self.stats["rebuilt_corrupt"] += 1
        return basis


def read_cache_file(path, expected_header=None):
    """Parse and verify a hom cache file; returns the basis or None if corrupt."""
    with open(path) as f:
        text = f.read()
    lines = text.splitlines()
    if len(lines) < 7 or not lines[-1].startswith("checksum "):
        return None
    body = "\n".join(lines[:-1]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != lines[-1].split()[1]:
        return None
    if expected_header is not None and lines[:len(expected_header)] != expected_header:
        return None
    count = int(lines[5].split()[1])
    tuples = [parse_split_tuple(line[6:]) for line in lines[6:-1] if line.startswith("tuple ")]
    if len(tuples) != count:
        return None
    return tuple(tuples)


_cache = HomCache()


def configure_cache(directory=None, field_name="rationals"):
    """Install a fresh process-wide hom cache; returns it."""
    global _cache
    _cache = HomCache(directory, field_name)
    _compose_terms.cache_clear()
    generator_matrix.cache_clear()
    return _cache


def active_cache():
    return _cache


def enumerate_split_tuples(n, m):
    """Basis of Hom([n], [m]) in the fixed order; empty when m > n."""
    if n < 0 or m < 0:
        raise ValueError("negative object")
    return list(_cache.basis(n, m))


def hom_dimension(n, m):
    return len(_cache.basis(n, m)) if 0 <= m <= n else 0


def basis_index(n, m):
    return _cache.index(n, m)


# ------------------------------------------------------------ morphisms


def identity(m):
    return tuple((k,) for k in range(m + 1))


def generator_dij(m, i, j):
    """d_{i,j} in Hom([m], [m-1]): brackets inputs i < j into output i."""
    if not (m >= 1 and 0 <= i < j <= m):
        raise ValueError("need 0 <= i < j <= m, got m=%s i=%s j=%s" % (m, i, j))
    blocks = [(k,) for k in range(m + 1) if k not in (i, j)] + [(i, j)]
    blocks.sort()
    return tuple(blocks)


class HomElement:
    """A finite linear combination of split tuples in Hom([source], [target])."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source, target, terms=None):
        self.source = source
        self.target = target
        clean = {}
        for blocks, c in (terms or {}).items():
            if source_of(blocks) != source or target_of(blocks) != target:
                raise ValueError("term %s not in Hom([%d],[%d])" % (format_split_tuple(blocks), source, target))
            if c:
                clean[blocks] = c
        self.terms = {b: clean[b] for b in sorted(clean, key=basis_key)}

    @classmethod
    def basis(cls, blocks):
        blocks = make_split_tuple(blocks)
        return cls(source_of(blocks), target_of(blocks), {blocks: 1})

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, HomElement) else cls.basis(x)

    def _check(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("different hom-spaces")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms.get(b, 0) + c
        return HomElement(self.source, self.target, terms)

    def __neg__(self):
        return HomElement(self.source, self.target, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return HomElement(self.source, self.target, {b: c * v for b, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HomElement):
            return NotImplemented
        return (self.source, self.target, self.terms) == (other.source, other.target, other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for b, c in self.terms.items():
            s = "(%s)" % format_split_tuple(b)
            parts.append(("+ " if c > 0 else "- ") + ("" if abs(c) == 1 else "%s*" % abs(c)) + s)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


@lru_cache(maxsize=200_000)
def _compose_terms(g, f):
    pieces = []
    for block in g:
        pieces.append(fold_comb([f[c] for c in block]))
    out = {}
    for choice in product(*[list(p.items()) for p in pieces]):
        coeff = 1
        for _, c in choice:
            coeff *= c
        blocks = tuple(comb for comb, _ in choice)
        reason = split_tuple_error(blocks)
        if reason:
            raise ShuffleConditionError(
                "composite violates split-tuple conditions: %s" % reason,
                {"g": format_split_tuple(g), "f": format_split_tuple(f),
                 "term": format_split_tuple(blocks)})
        out[blocks] = out.get(blocks, 0) + coeff
    return tuple((b, c) for b, c in sorted(out.items(), key=lambda t: basis_key(t[0])) if c)


def compose_basis(g, f):
    """g o f for basis split tuples g: [m]->[p], f: [n]->[m]; returns {blocks: coeff}."""
    if source_of(g) != target_of(f):
        raise ValueError("cannot compose %s after %s" % (format_split_tuple(g), format_split_tuple(f)))
    return dict(_compose_terms(g, f))


def compose(g, f):
    """Composite g o f of HomElements (or basis split tuples)."""
    g, f = HomElement.coerce(g), HomElement.coerce(f)
    if g.source != f.target:
        raise ValueError("source of g is [%d] but target of f is [%d]" % (g.source, f.target))
    terms = {}
    for gb, gc in g.terms.items():
        for fb, fc in f.terms.items():
            for b, c in _compose_terms(gb, fb):
                terms[b] = terms.get(b, 0) + gc * fc * c
    return HomElement(f.source, g.target, terms)


def postcomposition_matrix(phi, n):
    """Matrix of compose(phi, -): Hom([n],[m]) -> Hom([n],[p])."""
    phi = HomElement.coerce(phi)
    m, p = phi.source, phi.target
    cols = enumerate_split_tuples(n, m)
    rows = basis_index(n, p)
    entries = {}
    for j, b in enumerate(cols):
        for gb, gc in phi.terms.items():
            for t, c in _compose_terms(gb, b):
                key = (rows[t], j)
                entries[key] = entries.get(key, 0) + gc * c
    return SparseMatrix(len(rows), len(cols), entries)


@lru_cache(maxsize=None)
def generator_matrix(n, m, i, j):
    """Postcomposition by d_{i,j} as a map Hom([n],[m]) -> Hom([n],[m-1])."""
    return postcomposition_matrix(generator_dij(m, i, j), n)
