"""Truncated Taylor-series (jet) arithmetic.

Used to generate high-order series solutions of y'' = f(x, y) at a point,
which gives machine-generated startup values of any order without asking the
user for derivative closures beyond f itself.  A jet stores coefficients
c[0..order] of sum c_k t^k; all operations truncate at `order`.
"""

from __future__ import annotations

from .errors import DomainError


class TaylorJet:
    __slots__ = ("ctx", "order", "c")

    def __init__(self, ctx, coeffs, order=None):
        self.ctx = ctx
        if order is None:
            order = len(coeffs) - 1
        self.order = order
        c = [ctx.mpf(x) for x in coeffs[: order + 1]]
        c += [ctx.mpf(0)] * (order + 1 - len(c))
        self.c = c

    # -- construction helpers -----------------------------------------

    @classmethod
    def constant(cls, ctx, value, order):
        return cls(ctx, [value], order)

    @classmethod
    def variable(cls, ctx, value, order):
        """The jet of t ↦ value + t."""
        return cls(ctx, [value, ctx.mpf(1)], order)

    def _coerce(self, other):
        if isinstance(other, TaylorJet):
            return other
        return TaylorJet.constant(self.ctx, other, self.order)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return TaylorJet(self.ctx, [a + b for a, b in zip(self.c, o.c)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return TaylorJet(self.ctx, [-a for a in self.c], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TaylorJet):
            return TaylorJet(self.ctx, [a * other for a in self.c], self.order)
        n = self.order
        zero = self.ctx.mpf(0)
        out = [zero] * (n + 1)
        for i, ai in enumerate(self.c):
            if ai:
                for j in range(n + 1 - i):
                    bj = other.c[j]
                    if bj:
                        out[i + j] += ai * bj
        return TaylorJet(self.ctx, out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TaylorJet):
            inv = self.ctx.mpf(1) / self.ctx.mpf(other)
            return self * inv
        if other.c[0] == 0:
            raise DomainError("jet division by a jet with zero constant term")
        n = self.order
        out = [self.ctx.mpf(0)] * (n + 1)
        for k in range(n + 1):
            acc = self.c[k]
            for j in range(k):
                acc -= out[j] * other.c[k - j]
            out[k] = acc / other.c[0]
        return TaylorJet(self.ctx, out, n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("jet power requires a non-negative integer exponent")
        out = TaylorJet.constant(self.ctx, 1, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- transcendental ------------------------------------------------

    def sin_cos(self):
        """Jets of sin(self) and cos(self) via the standard ODE recurrence."""
        ctx, n = self.ctx, self.order
        s = [ctx.mpf(0)] * (n + 1)
        c = [ctx.mpf(0)] * (n + 1)
        s[0] = ctx.mp.sin(self.c[0])
        c[0] = ctx.mp.cos(self.c[0])
        for k in range(1, n + 1):
            ss = ctx.mpf(0)
            cc = ctx.mpf(0)
            for j in range(1, k + 1):
                uj = j * self.c[j]
                ss += uj * c[k - j]
                cc += uj * s[k - j]
            s[k] = ss / k
            c[k] = -cc / k
        return TaylorJet(ctx, s, n), TaylorJet(ctx, c, n)

    def sin(self):
        return self.sin_cos()[0]

    def cos(self):
        return self.sin_cos()[1]

    # -- evaluation ------------------------------------------------------

    def eval(self, t):
        acc = self.ctx.mpf(0)
        for a in reversed(self.c):
            acc = acc * t + a
        return acc

    def derivative(self):
        ctx, n = self.ctx, self.order
        return TaylorJet(ctx, [(k + 1) * self.c[k + 1] for k in range(n)], max(n - 1, 0))


def ode_series(ctx, f2, x0, y0, yp0, order: int) -> TaylorJet:
    """Taylor jet of the solution of y'' = f2(x, y, y') around x0.

    Bootstraps coefficients two at a time: the jet of f2 evaluated on the
    partial solution jet determines the next y-coefficient.  Requires f2 to
    be built from arithmetic the jet type supports; the second-order problem
    class keeps f2 independent of y', so yp is passed through as a plain jet.
    """
    y = [ctx.mpf(y0), ctx.mpf(yp0)] + [ctx.mpf(0)] * (order - 1)
    xj = TaylorJet.variable(ctx, x0, order)
    for k in range(order - 1):
        yj = TaylorJet(ctx, y, order)
        ypj = yj.derivative()
        fj = f2(xj, yj, ypj)
        if not isinstance(fj, TaylorJet):
            fj = TaylorJet.constant(ctx, fj, order)
        y[k + 2] = fj.c[k] / ((k + 1) * (k + 2))
    return TaylorJet(ctx, y, order)
