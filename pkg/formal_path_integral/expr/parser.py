import re
from collections import namedtuple

from formal_path_integral.errors import (
    ExpressionSyntaxError,
    UnknownIdentifierError,
    DimensionMismatchError,
)
from formal_path_integral.expr.nodes import (
    FUNCTIONS,
    Number,
    Variable,
    Parameter,
    Negation,
    BinaryOp,
    Function,
    Expression,
)

# expr   := term (('+'|'-') term)*
# term   := factor (('*'|'/') factor)*
# factor := unary ('^' factor)?
# unary  := '-'? atom
# atom   := number | ident | func '(' expr ')' | '(' expr ')'

Token = namedtuple("Token", ["kind", "text", "offset"])

TOKEN_SPEC = [
    ("number", r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"),
    ("ident", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("op", r"[+\-*/^]"),
    ("lparen", r"\("),
    ("rparen", r"\)"),
    ("space", r"\s+"),
]
TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))

COORDINATE_REGEX = re.compile(r"^([vq])(\d+)$")
RESERVED = set(FUNCTIONS) | {"tau", "v", "q"}


def tokenize(source):
    tokens = []
    offset = 0
    while offset < len(source):
        match = TOKEN_REGEX.match(source, offset)
        if match is None:
            raise ExpressionSyntaxError(f"unexpected character {source[offset]!r}", offset)
        kind = match.lastgroup
        if kind != "space":
            tokens.append(Token(kind, match.group(), offset))
        offset = match.end()
    tokens.append(Token("eof", "", len(source)))
    return tokens


class Parser:
    """Recursive-descent parser producing an :class:`Expression`.

    Args:
        source (str): expression text.
        dimension (int): number of v and q coordinates.
        parameters (dict): named constants bound at parse time.
    """

    def __init__(self, source, dimension, parameters=None):
        self.source = source
        self.dimension = dimension
        self.parameters = dict(parameters or {})
        self.tokens = tokenize(source)
        self.position = 0

        for name in self.parameters:
            if name in RESERVED or COORDINATE_REGEX.match(name):
                raise ValueError(f"Invalid parameter name `{name}`, it is reserved")

    # ---------------------- token helpers ---------------------- #

    def peek(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        self.position += 1
        return token

    def expect(self, kind, text=None):
        token = self.peek()
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text if text is not None else kind
            found = token.text if token.kind != "eof" else "end of input"
            raise ExpressionSyntaxError(f"expected {wanted!r}, found {found!r}", token.offset)
        return self.advance()

    def at_op(self, *ops):
        token = self.peek()
        return token.kind == "op" and token.text in ops

    # ---------------------- grammar ---------------------- #

    def parse(self):
        if not self.source.strip():
            raise ExpressionSyntaxError("empty expression", 0)
        root = self.parse_expr()
        token = self.peek()
        if token.kind != "eof":
            raise ExpressionSyntaxError(f"unexpected token {token.text!r}", token.offset)
        return Expression(
            root=root,
            dimension=self.dimension,
            parameters=tuple(sorted(self.parameters.items())),
            source=self.source,
        )

    def parse_expr(self):
        node = self.parse_term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = BinaryOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = BinaryOp(op, node, self.parse_factor())
        return node

    def parse_factor(self):
        base = self.parse_unary()
        if self.at_op("^"):
            self.advance()
            return BinaryOp("^", base, self.parse_factor())
        return base

    def parse_unary(self):
        if self.at_op("-"):
            self.advance()
            return Negation(self.parse_atom())
        return self.parse_atom()

    def parse_atom(self):
        token = self.peek()

        if token.kind == "number":
            self.advance()
            return Number(float(token.text))

        if token.kind == "lparen":
            self.advance()
            node = self.parse_expr()
            self.expect("rparen")
            return node

        if token.kind == "ident":
            self.advance()
            if token.text in FUNCTIONS:
                self.expect("lparen")
                argument = self.parse_expr()
                self.expect("rparen")
                return Function(token.text, argument)
            return self.resolve(token)

        found = token.text if token.kind != "eof" else "end of input"
        raise ExpressionSyntaxError(f"unexpected {found!r}", token.offset)

    def resolve(self, token):
        name = token.text
        if name == "tau":
            return Variable("tau", 0)

        if name in ("v", "q"):
            if self.dimension != 1:
                raise DimensionMismatchError(
                    f"bare `{name}` at offset {token.offset} is only allowed when dimension is 1")
            return Variable(name, 1)

        match = COORDINATE_REGEX.match(name)
        if match is not None and name not in self.parameters:
            index = int(match.group(2))
            if not 1 <= index <= self.dimension:
                raise DimensionMismatchError(
                    f"`{name}` at offset {token.offset} exceeds dimension {self.dimension}")
            return Variable(match.group(1), index)

        if name in self.parameters:
            return Parameter(name, float(self.parameters[name]))

        raise UnknownIdentifierError(f"unknown identifier `{name}` at offset {token.offset}")


def parse(source, dimension, parameters=None):
    """Parse ``source`` into an Expression over (tau, v1..vd, q1..qd).

    :param source: expression text
    :type source: str
    :param dimension: number of coordinates d
    :type dimension: int
    :param parameters: named constants
    :type parameters: dict

    :rtype: Expression
    """
    if dimension is None or dimension < 1:
        raise ValueError("Invalid value for `dimension`, must be a value greater than or equal to `1`")
    if source is None:
        raise ValueError("Invalid value for `source`, must not be `None`")
    return Parser(source, dimension, parameters).parse()


def to_source(expression):
    """Print an Expression (or node) so that parsing it again yields the same tree."""
    return expression.to_source()
