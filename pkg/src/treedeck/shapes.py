"""Canonical rooted binary tree shapes.

A *shape* is an isomorphism class of rooted trees in which every
internal vertex has exactly two children; only the leaf count matters,
not labels.  Shapes are hash-consed: building the same shape twice
returns the same object, so ``==`` (identity) coincides with
isomorphism and hashing is O(1).

Every shape has a canonical code over the alphabet ``{'0', '1'}``:
``code(leaf) = "0"`` and ``code(a + b) = "1" + code(a) + code(b)`` with
the children ordered so that ``code(a) <= code(b)`` in the total order
used throughout the package (leaf count ascending, then plain byte
order).  Codes are prefix-free, and two shapes are isomorphic exactly
when their codes are equal.
"""

from __future__ import annotations

from .errors import ParseError

__all__ = [
    "TreeShape",
    "leaf",
    "join",
    "caterpillar",
    "complete",
    "jellyfish",
    "z_tree",
    "x_tree",
    "y_tree",
    "encode",
    "decode",
    "root_split",
    "to_text",
    "parse_text",
    "code_sort_key",
]


class TreeShape:
    """An immutable, interned rooted binary tree shape.

    ``left`` and ``right`` are ``None`` for the single leaf shape;
    otherwise they hold the two child shapes with
    ``code(left) <= code(right)``.  ``size`` is the leaf count.

    Do not instantiate directly; go through :func:`leaf` and
    :func:`join` (or the named constructors), which intern the result.
    """

    __slots__ = ("left", "right", "size", "_code")

    left: "TreeShape | None"
    right: "TreeShape | None"
    size: int

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def code(self) -> str:
        """Canonical code; cached after the first computation."""
        c = self._code
        if c is None:
            c = _build_code(self)
            self._code = c
        return c

    def __repr__(self) -> str:
        return f"TreeShape({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    # Identity-based __eq__/__hash__ (inherited) are correct because of
    # interning.  Ordering is the canonical total order.
    def __lt__(self, other: "TreeShape") -> bool:
        return _cmp(self, other) < 0

    def __le__(self, other: "TreeShape") -> bool:
        return _cmp(self, other) <= 0

    def __gt__(self, other: "TreeShape") -> bool:
        return _cmp(self, other) > 0

    def __ge__(self, other: "TreeShape") -> bool:
        return _cmp(self, other) >= 0


def _new_node(left: TreeShape | None, right: TreeShape | None, size: int) -> TreeShape:
    node = TreeShape.__new__(TreeShape)
    node.left = left
    node.right = right
    node.size = size
    node._code = None
    return node


_LEAF = _new_node(None, None, 1)
_LEAF._code = "0"

# Intern table for internal nodes, keyed by the ordered child pair.
# dict.setdefault is atomic in CPython, so concurrent joins agree on a
# single representative.
_JOINS: dict[tuple[TreeShape, TreeShape], TreeShape] = {}


def _intern(first: TreeShape, second: TreeShape) -> TreeShape:
    """Intern a join whose children are already in canonical order."""
    key = (first, second)
    node = _JOINS.get(key)
    if node is None:
        node = _JOINS.setdefault(key, _new_node(first, second, first.size + second.size))
    return node


def _raw_cmp(a: TreeShape, b: TreeShape) -> int:
    """Plain byte order of the canonical codes, computed structurally."""
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x is y:
            continue
        cx, cy = x._code, y._code
        if cx is not None and cy is not None:
            if cx == cy:  # pragma: no cover - interning makes this unreachable
                continue
            return -1 if cx < cy else 1
        if x.left is None:  # "0" sorts before any "1..."
            return -1
        if y.left is None:
            return 1
        stack.append((x.right, y.right))
        stack.append((x.left, y.left))
    return 0


def _cmp(a: TreeShape, b: TreeShape) -> int:
    """Canonical total order: leaf count ascending, then byte order."""
    if a is b:
        return 0
    if a.size != b.size:
        return -1 if a.size < b.size else 1
    return _raw_cmp(a, b)


def _build_code(shape: TreeShape) -> str:
    parts: list[str] = []
    stack = [shape]
    while stack:
        t = stack.pop()
        c = t._code
        if c is not None:
            parts.append(c)
        else:
            # internal node: t.left is not None here
            parts.append("1")
            stack.append(t.right)
            stack.append(t.left)
    return "".join(parts)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def leaf() -> TreeShape:
    """The unique one-leaf shape."""
    return _LEAF


def join(a: TreeShape, b: TreeShape) -> TreeShape:
    """Join two shapes under a fresh root; commutative on shapes."""
    if _cmp(a, b) <= 0:
        return _intern(a, b)
    return _intern(b, a)


def caterpillar(n: int) -> TreeShape:
    """The maximally unbalanced shape on ``n`` leaves."""
    if n < 1:
        raise ValueError(f"caterpillar size must be >= 1, got {n}")
    t = _LEAF
    for _ in range(n - 1):
        t = _intern(_LEAF, t)
    return t


def complete(h: int) -> TreeShape:
    """The perfectly balanced shape of height ``h`` (2**h leaves)."""
    if h < 0:
        raise ValueError(f"height must be >= 0, got {h}")
    t = _LEAF
    for _ in range(h):
        t = _intern(t, t)
    return t


def jellyfish(k: int, l: int) -> TreeShape:
    """A height-``k`` complete tree whose leaves are caterpillars on ``l`` leaves.

    Size is ``2**k * l``.  ``jellyfish(k, 2) == complete(k + 1)`` and
    ``jellyfish(0, l) == caterpillar(l)``.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if l < 2:
        raise ValueError(f"l must be >= 2, got {l}")
    t = caterpillar(l)
    for _ in range(k):
        t = _intern(t, t)
    return t


def z_tree(n: int) -> TreeShape:
    """The n-leaf member of the family maximizing the (n-1)-deck size."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    if n <= 3:
        return caterpillar(n)
    c1, c2 = _LEAF, caterpillar(2)
    z = [None, c1, caterpillar(2), caterpillar(3)]
    for m in range(4, n + 1):
        if m % 3 == 0:
            z.append(join(c1, z[m - 1]))
        else:
            z.append(join(c2, z[m - 2]))
    return z[n]


def x_tree(n: int) -> TreeShape:
    """Member of the subtree-rich family defined for n = 1 (mod 4)."""
    if n < 1 or n % 4 != 1:
        raise ValueError(f"size must be 1 (mod 4) and >= 1, got {n}")
    c3 = caterpillar(3)
    t = _LEAF
    for _ in range((n - 1) // 4):
        t = join(c3, join(_LEAF, t))
    return t


def y_tree(n: int) -> TreeShape:
    """Member of the subtree-rich family defined for n = 2 (mod 4)."""
    if n < 2 or n % 4 != 2:
        raise ValueError(f"size must be 2 (mod 4) and >= 2, got {n}")
    return join(_LEAF, x_tree(n - 1))


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------

def encode(tree: TreeShape) -> str:
    """The canonical code of ``tree``."""
    return tree.code


def code_sort_key(code: str) -> tuple[int, str]:
    """Sort key realizing the total order on codes (size, then bytes)."""
    return (code.count("0"), code)


def decode(code: str) -> TreeShape:
    """Inverse of :func:`encode`.

    Rejects anything that is not the canonical code of some shape:
    stray characters, truncation, trailing data, and children stored
    out of canonical order, reporting the offset of the first
    violation.
    """
    n = len(code)
    if n == 0:
        raise ParseError("empty code", 0, "'0' or '1'")
    # frames: [first_child | None, offset where the second child starts]
    frames: list[list] = []
    i = 0
    while True:
        if i >= n:
            raise ParseError("truncated code", i, "'0' or '1'")
        ch = code[i]
        if ch == "0":
            node = _LEAF
            i += 1
        elif ch == "1":
            frames.append([None, -1])
            i += 1
            continue
        else:
            raise ParseError(f"invalid character {ch!r}", i, "'0' or '1'")
        # a subtree just completed; reduce as far as possible
        while frames:
            top = frames[-1]
            if top[0] is None:
                top[0] = node
                top[1] = i
                break
            frames.pop()
            first, second_at = top[0], top[1]
            if _cmp(first, node) > 0:
                raise ParseError("children out of canonical order", second_at,
                                 "a second child not smaller than the first")
            node = _intern(first, node)
        else:
            break
    if i != n:
        raise ParseError("trailing data after a complete code", i, "end of input")
    return node


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------

def root_split(tree: TreeShape) -> frozenset[int]:
    """The unordered pair of child leaf counts (a singleton when equal)."""
    if tree.size < 2:
        raise ValueError("the one-leaf shape has no root split")
    return frozenset((tree.left.size, tree.right.size))


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

def to_text(tree: TreeShape) -> str:
    """Render in the grammar ``shape := "*" | "(" shape "," shape ")"``.

    Children appear in canonical order and the output carries no
    whitespace, so equal shapes render to equal strings.
    """
    parts: list[str] = []
    stack: list = [tree]
    while stack:
        item = stack.pop()
        if type(item) is str:
            parts.append(item)
        elif item.left is None:
            parts.append("*")
        else:
            parts.append("(")
            stack.append(")")
            stack.append(item.right)
            stack.append(",")
            stack.append(item.left)
    return "".join(parts)


_WS = " \t\r\n"


def parse_text(text: str) -> TreeShape:
    """Parse the text grammar, accepting any child order and whitespace.

    The result is canonical regardless of how the input orders
    children.  Errors report the byte offset and the expected token.
    """
    n = len(text)
    i = 0
    # frames: one entry per open "(", holding its first child once parsed
    frames: list[TreeShape | None] = []
    node: TreeShape | None = None
    while True:
        while i < n and text[i] in _WS:
            i += 1
        if i >= n:
            raise ParseError("unexpected end of input", i, "'*' or '('")
        ch = text[i]
        if ch == "*":
            node = _LEAF
            i += 1
        elif ch == "(":
            i += 1
            frames.append(None)  # first child pending
            continue
        else:
            raise ParseError(f"unexpected character {ch!r}", i, "'*' or '('")
        # a complete shape in `node`; consume separators going up
        while frames:
            while i < n and text[i] in _WS:
                i += 1
            if frames[-1] is None:
                if i >= n or text[i] != ",":
                    raise ParseError("missing ','", i, "','")
                frames[-1] = node
                i += 1
                break
            if i >= n or text[i] != ")":
                raise ParseError("missing ')'", i, "')'")
            node = join(frames.pop(), node)
            i += 1
        else:
            break
    while i < n and text[i] in _WS:
        i += 1
    if i != n:
        raise ParseError("trailing data after a complete shape", i, "end of input")
    return node
