"""Abstract syntax tree of the Lagrangian expression language.

Nodes are frozen dataclasses, so two trees compare equal exactly when they are
structurally identical.
"""
from dataclasses import dataclass, field
from typing import Dict, Tuple

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "tanh")
BINARY_OPERATORS = ("+", "-", "*", "/", "^")


class Node:
    def to_source(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Number(Node):
    value: float

    def to_source(self):
        if self.value < 0:
            return f"-({repr(-float(self.value))})"
        return repr(float(self.value))


@dataclass(frozen=True)
class Variable(Node):
    """A coordinate of (tau, v1..vd, q1..qd).

    ``kind`` is one of ``"tau"``, ``"v"``, ``"q"``; ``index`` is 1-based for v and q
    and 0 for tau.
    """
    kind: str
    index: int = 0

    @property
    def name(self):
        return "tau" if self.kind == "tau" else f"{self.kind}{self.index}"

    def slot(self, dimension):
        """Position of this variable in the jet ordering (tau, v1..vd, q1..qd)."""
        if self.kind == "tau":
            return 0
        if self.kind == "v":
            return self.index
        return dimension + self.index

    def to_source(self):
        return self.name


@dataclass(frozen=True)
class Parameter(Node):
    name: str
    value: float = field(compare=True)

    def to_source(self):
        return self.name


@dataclass(frozen=True)
class Negation(Node):
    operand: Node

    def to_source(self):
        return f"-({self.operand.to_source()})"


@dataclass(frozen=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node

    def to_source(self):
        return f"({self.left.to_source()} {self.op} {self.right.to_source()})"


@dataclass(frozen=True)
class Function(Node):
    name: str
    argument: Node

    def to_source(self):
        return f"{self.name}({self.argument.to_source()})"


@dataclass(frozen=True)
class Expression:
    """A parsed expression bound to a dimension and a parameter set.

    Args:
        root (Node): the syntax tree.
        dimension (int): number of v and q coordinates.
        parameters (tuple): sorted ``(name, value)`` pairs bound at parse time.
        source (str): text the tree was parsed from.
    """
    root: Node
    dimension: int
    parameters: Tuple[Tuple[str, float], ...] = ()
    source: str = field(default="", compare=False)

    @property
    def parameter_map(self) -> Dict[str, float]:
        return dict(self.parameters)

    def to_source(self):
        return self.root.to_source()

    def variables(self):
        """Set of variables appearing in the tree."""
        found = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Variable):
                found.add(node)
            elif isinstance(node, Negation):
                stack.append(node.operand)
            elif isinstance(node, BinaryOp):
                stack.extend((node.left, node.right))
            elif isinstance(node, Function):
                stack.append(node.argument)
        return found

    def __str__(self):
        return self.to_source()
