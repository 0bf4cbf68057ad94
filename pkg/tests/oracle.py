"""Symbolic reference for jet evaluation.

Expression trees are translated to sympy and differentiated without
truncation, independently of the jet arithmetic.
"""
from functools import lru_cache

import numpy as np
import sympy
from core import models

_FUNCTIONS = {"exp": sympy.exp, "log": sympy.log, "sin": sympy.sin, "cos": sympy.cos}


def to_sympy(node: models.Node) -> sympy.Expr:
    """Translate an expression tree to a sympy expression."""
    if isinstance(node, models.Number):
        if isinstance(node.value, int):
            return sympy.Integer(node.value)
        return sympy.Float(node.value)
    if isinstance(node, models.Symbol):
        return sympy.Symbol(node.name)
    if isinstance(node, models.Negate):
        return -to_sympy(node.operand)
    if isinstance(node, models.Call):
        return _FUNCTIONS[node.function](to_sympy(node.argument))
    left, right = to_sympy(node.left), to_sympy(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return left / right
    return left**right


@lru_cache(maxsize=None)
def _derivative(expr: sympy.Expr, names: tuple, alpha: tuple) -> sympy.Expr:
    if not any(alpha):
        return expr
    axis = next(i for i, a in enumerate(alpha) if a)
    lower = alpha[:axis] + (alpha[axis] - 1,) + alpha[axis + 1 :]
    return sympy.diff(_derivative(expr, names, lower), sympy.Symbol(names[axis]))


def derivative(source: str, variables, alpha, point) -> float:
    """d^alpha of the expression `source` at `point`."""
    expr = to_sympy(models.parse_expression(source))
    value = _derivative(expr, tuple(variables), tuple(alpha))
    subs = {sympy.Symbol(name): c for name, c in zip(variables, point)}
    return float(value.evalf(subs=subs))


def random_expression(rng: np.random.Generator, variables, depth: int = 3) -> str:
    """A random expression string defined on all of R^n.

    Logarithms and quotients only receive arguments bounded away from
    zero.
    """
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.3:
            return repr(round(float(rng.uniform(-2, 2)), 3))
        return str(rng.choice(variables))
    a = random_expression(rng, variables, depth - 1)
    b = random_expression(rng, variables, depth - 1)
    kind = rng.integers(0, 8)
    if kind == 0:
        return f"({a} + {b})"
    if kind == 1:
        return f"({a} - {b})"
    if kind == 2:
        return f"({a} * {b})"
    if kind == 3:
        return f"({a}) / (2 + cos({b}))"
    if kind == 4:
        return f"exp(sin({a}))"
    if kind == 5:
        return f"log(1 + ({a})^2)"
    if kind == 6:
        return f"sin({a})"
    return f"({a})^2"


def random_conservation_form(
    rng: np.random.Generator, n: int, max_alpha_order: int = 2, depth: int = 2
) -> list:
    """Random components of a conservation form of dimension n.

    Component i is a random expression in the coordinates other than
    x^i and the invariants ``I{i}_...`` allowed for it.
    """
    variables = models.default_variables(n)
    components = []
    for i in range(n):
        names = [v for axis, v in enumerate(variables) if axis != i]
        names += [
            models.invariant_name(i, alpha)
            for alpha in models.multi_indices(n, max_alpha_order)
            if alpha[i] == 0
        ]
        components.append(random_expression(rng, names, depth))
    return components


def random_product_solution(rng: np.random.Generator, n: int) -> str:
    """A positive product of factors that each miss one coordinate.

    Every such product solves the n-d'Alembert equation.
    """
    variables = models.default_variables(n)
    factors = []
    for k in range(n):
        others = " + ".join(v for axis, v in enumerate(variables) if axis != k)
        a = round(float(rng.uniform(1.5, 3.0)), 3)
        b = round(float(rng.uniform(-2.0, 2.0)), 3)
        if rng.random() < 0.5:
            factors.append(f"({a!r} + sin(({b!r}) * ({others})))")
        else:
            factors.append(f"exp(({b!r}) * cos({others}))")
    return " * ".join(factors)
