"""Finite-dimensional linear relations: subspaces of F^m x F^n.

A relation is stored only through the canonical form of its span, so
relation equality is value equality and every operation reduces to exact
subspace computations on block matrices.  Sums and compositions go through
the fiber-product kernel of a stacked system; root subspaces and the Weyr
characteristic come from iterated composition of the shifted relation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    NoResolventPointError,
    NotResolventPointError,
    WeyrlabError,
)
from .linalg import (
    Matrix,
    Subspace,
    column_space,
    map_image,
    matrix_inverse,
    null_space,
    subspace_intersect,
    vector,
)
from .polynomials import Polynomial, minor_gcd_poly
from .gaussian_roots import gaussian_rational_roots
from .scalars import INF, ExtendedScalar, GaussianRational, Infinity, gr

__all__ = ["LinearRelation", "WeyrTable", "PointSpectrum"]


@dataclass(frozen=True)
class WeyrTable:
    """Weyr characteristic at one spectral point.

    indices[k-1] = dim S^k - dim S^(k-1) for the root subspaces S^k; the
    sequence is non-increasing and stripped of trailing zeros, root_dims
    carries the cumulative dimensions up to stabilization.
    """

    at: ExtendedScalar
    indices: tuple[int, ...]
    root_dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.root_dims):
            raise ValueError("indices and root_dims must have equal length")
        prev_dim = 0
        prev_idx = None
        for w, d in zip(self.indices, self.root_dims):
            if w <= 0:
                raise ValueError("Weyr indices must be positive")
            if prev_idx is not None and w > prev_idx:
                raise ValueError("Weyr indices must be non-increasing")
            if d - prev_dim != w:
                raise ValueError("root dimensions must accumulate the indices")
            prev_idx = w
            prev_dim = d

    @property
    def is_empty(self) -> bool:
        return not self.indices

    def index_at(self, k: int) -> int:
        """w_k, zero beyond stabilization."""
        return self.indices[k - 1] if 1 <= k <= len(self.indices) else 0

    def root_dim_at(self, k: int) -> int:
        """dim S^k, constant beyond stabilization."""
        if not self.root_dims:
            return 0
        return self.root_dims[min(k, len(self.root_dims)) - 1] if k >= 1 else 0


@dataclass(frozen=True)
class PointSpectrum:
    """Point spectrum of a relation: exact Q(i) part, infinity flag, residual."""

    finite: tuple[GaussianRational, ...]
    has_infinity: bool
    residual: Polynomial


@dataclass(frozen=True)
class LinearRelation:
    """A subspace of F^dim_x x F^dim_y viewed as a multivalued map."""

    dim_x: int
    dim_y: int
    span: Subspace

    def __post_init__(self):
        if self.span.ambient_dim != self.dim_x + self.dim_y:
            raise DimensionMismatch("span ambient must be dim_x + dim_y")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_pairs(dim_x: int, dim_y: int, pairs) -> LinearRelation:
        vecs = []
        for x, y in pairs:
            x = vector(x)
            y = vector(y)
            if len(x) != dim_x or len(y) != dim_y:
                raise DimensionMismatch("pair does not match the relation dimensions")
            vecs.append(x + y)
        return LinearRelation(dim_x, dim_y, Subspace.from_spanning(dim_x + dim_y, vecs))

    @staticmethod
    def from_graph(m: Matrix) -> LinearRelation:
        stacked = Matrix.identity(m.cols).vstack(m)
        return LinearRelation(m.cols, m.rows, Subspace.from_spanning(m.cols + m.rows, stacked.columns()))

    @staticmethod
    def identity(n: int) -> LinearRelation:
        return LinearRelation.from_graph(Matrix.identity(n))

    @staticmethod
    def full(dim_x: int, dim_y: int) -> LinearRelation:
        return LinearRelation(dim_x, dim_y, Subspace.full(dim_x + dim_y))

    # -- span blocks ---------------------------------------------------------

    def x_block(self) -> Matrix:
        return self.span.basis.row_slice(0, self.dim_x)

    def y_block(self) -> Matrix:
        return self.span.basis.row_slice(self.dim_x, self.dim_x + self.dim_y)

    @property
    def is_square(self) -> bool:
        return self.dim_x == self.dim_y

    def _require_square(self):
        if not self.is_square:
            raise DimensionMismatch("operation requires a square relation")

    # -- kernel / domain / range / multivalued part -------------------------

    def kernel(self) -> Subspace:
        return map_image(self.x_block(), null_space(self.y_block()))

    def domain(self) -> Subspace:
        return column_space(self.x_block())

    def range_of(self) -> Subspace:
        return column_space(self.y_block())

    def mul_part(self) -> Subspace:
        return map_image(self.y_block(), null_space(self.x_block()))

    # -- relation algebra ----------------------------------------------------

    def op_sum(self, other: LinearRelation) -> LinearRelation:
        """{(x, y1 + y2) : (x, y1) in self, (x, y2) in other}."""
        if (self.dim_x, self.dim_y) != (other.dim_x, other.dim_y):
            raise DimensionMismatch("relation sum needs matching dimensions")
        pl, ql = self.x_block(), self.y_block()
        pm, qm = other.x_block(), other.y_block()
        ker = null_space(pl.hstack(-pm))
        dl = pl.cols
        vecs = []
        for c in ker.basis_vectors():
            a, b = c[:dl], c[dl:]
            x = pl.apply(a)
            y = tuple(p + q for p, q in zip(ql.apply(a), qm.apply(b)))
            vecs.append(x + y)
        return LinearRelation(self.dim_x, self.dim_y, Subspace.from_spanning(self.dim_x + self.dim_y, vecs))

    def compose(self, inner: LinearRelation) -> LinearRelation:
        """self after inner: {(x, z) : (x, y) in inner, (y, z) in self}."""
        if inner.dim_y != self.dim_x:
            raise DimensionMismatch("composition needs inner.dim_y == outer.dim_x")
        pi, qi = inner.x_block(), inner.y_block()
        po, qo = self.x_block(), self.y_block()
        ker = null_space(qi.hstack(-po))
        di = pi.cols
        vecs = []
        for c in ker.basis_vectors():
            a, b = c[:di], c[di:]
            vecs.append(pi.apply(a) + qo.apply(b))
        return LinearRelation(inner.dim_x, self.dim_y, Subspace.from_spanning(inner.dim_x + self.dim_y, vecs))

    def inverse(self) -> LinearRelation:
        vecs = [v[self.dim_x :] + v[: self.dim_x] for v in self.span.basis_vectors()]
        return LinearRelation(self.dim_y, self.dim_x, Subspace.from_spanning(self.dim_y + self.dim_x, vecs))

    def shift(self, lam: GaussianRational) -> LinearRelation:
        """self - lam: {(x, y - lam x) : (x, y) in self}."""
        self._require_square()
        n = self.dim_x
        vecs = []
        for v in self.span.basis_vectors():
            x, y = v[:n], v[n:]
            vecs.append(x + tuple(yi - lam * xi for xi, yi in zip(x, y)))
        return LinearRelation(n, n, Subspace.from_spanning(2 * n, vecs))

    def power(self, k: int) -> LinearRelation:
        """k-fold composition; exits early once the powers stabilize."""
        self._require_square()
        if k < 0:
            raise ValueError("power requires a nonnegative exponent")
        acc = LinearRelation.identity(self.dim_x)
        for _ in range(k):
            nxt = self.compose(acc)
            if nxt == acc:
                break
            acc = nxt
        return acc

    # -- spectral structure --------------------------------------------------

    def _chain_base(self, at: ExtendedScalar) -> tuple[LinearRelation, bool]:
        self._require_square()
        if isinstance(at, Infinity):
            return self, True
        return self.shift(at), False

    def root_subspace(self, at: ExtendedScalar, k: int) -> Subspace:
        """ker (self - at)^k, with mul self^k at infinity."""
        base, at_infinity = self._chain_base(at)
        if k == 0:
            return Subspace.zero(self.dim_x)
        pw = base.power(k)
        return pw.mul_part() if at_infinity else pw.kernel()

    def _root_chain(self, at: ExtendedScalar) -> list[Subspace]:
        """Root subspaces for k = 1.. until stabilization (<= ambient dim)."""
        base, at_infinity = self._chain_base(at)
        spaces: list[Subspace] = []
        acc = base
        prev = 0
        for _ in range(self.dim_x):
            space = acc.mul_part() if at_infinity else acc.kernel()
            if space.dim == prev:
                break
            spaces.append(space)
            prev = space.dim
            acc = base.compose(acc)
        return spaces

    def stabilized_root_subspace(self, at: ExtendedScalar) -> Subspace:
        chain = self._root_chain(at)
        return chain[-1] if chain else Subspace.zero(self.dim_x)

    def weyr_table(self, at: ExtendedScalar) -> WeyrTable:
        dims = [s.dim for s in self._root_chain(at)]
        indices = tuple(d - p for d, p in zip(dims, [0] + dims[:-1]))
        return WeyrTable(at=at, indices=indices, root_dims=tuple(dims))

    def singular_chain_space(self) -> Subspace:
        """Intersection of the stabilized root subspaces at 0 and infinity."""
        self._require_square()
        return subspace_intersect(
            self.stabilized_root_subspace(gr(0)),
            self.stabilized_root_subspace(INF),
        )

    def is_resolvent_point(self, at: ExtendedScalar) -> bool:
        self._require_square()
        if isinstance(at, Infinity):
            return self.mul_part().is_zero() and self.domain().is_full()
        shifted = self.shift(at)
        return shifted.kernel().is_zero() and shifted.range_of().is_full()

    def point_spectrum(self) -> PointSpectrum:
        """Eigenvalues in Q(i), an infinity flag, and the non-Q(i) residual.

        Requires a relation with at least one resolvent point: the span must
        have dimension equal to the ambient dimension and the determinant of
        its spanning pencil must not vanish identically.
        """
        self._require_square()
        n = self.dim_x
        d = self.span.dim
        if d != n:
            raise NoResolventPointError(
                f"span dimension {d} != ambient dimension {n}: no resolvent point exists"
            )
        p, q = self.x_block(), self.y_block()
        g = minor_gcd_poly(p, q, d)
        if g.is_zero:
            raise NoResolventPointError(
                "spanning pencil has identically vanishing minor gcd (singular chains present)"
            )
        roots, residual = gaussian_rational_roots(g)
        finite = tuple(r for r, _ in roots)
        return PointSpectrum(
            finite=finite,
            has_infinity=not self.mul_part().is_zero(),
            residual=residual,
        )

    # -- resolvent-based representations -------------------------------------

    def as_operator_matrix(self) -> Matrix:
        """The matrix of a relation that is an everywhere-defined operator graph."""
        self._require_square()
        if not self.mul_part().is_zero() or not self.domain().is_full():
            raise WeyrlabError("relation is not an everywhere-defined operator")
        return self.y_block() * matrix_inverse(self.x_block())

    def resolvent_representations(
        self, mu: GaussianRational, lam: GaussianRational
    ) -> tuple[LinearRelation, LinearRelation]:
        """(self - lam) rebuilt from the resolvent at mu, two ways.

        Returns the range form ran [R ; I + (mu - lam) R] and the kernel form
        ker [I + (mu - lam) R, -R] where R = (self - mu)^{-1}; both equal
        self - lam whenever mu is a resolvent point.
        """
        if not self.is_resolvent_point(mu):
            raise NotResolventPointError(f"{mu} is not a resolvent point")
        n = self.dim_x
        r_mat = self.shift(mu).inverse().as_operator_matrix()
        mixed = Matrix.identity(n) + r_mat.scale(mu - lam)
        via_range = LinearRelation(
            n, n, Subspace.from_spanning(2 * n, r_mat.vstack(mixed).columns())
        )
        via_kernel = LinearRelation(n, n, null_space(mixed.hstack(-r_mat)))
        return via_range, via_kernel
