"""PQ-tree with incremental row reduction (Booth-Lueker templates).

The tree represents the set of column orders under which every row inserted
so far is consecutive: P-node children permute freely, Q-node children are
fixed up to reversal.  reduce() applies one row and fails exactly when no
represented order keeps that row consecutive.

Children are kept in doubly-linked lists with full parent pointers; per-call
bookkeeping is epoch-stamped on the nodes, so no global clearing is needed.
"""

from __future__ import annotations

from typing import Iterable, Optional

_P, _Q, _LEAF = "P", "Q", "L"


class _Node:
    __slots__ = (
        "kind", "leaf", "parent", "prev", "next", "first", "last", "nchild",
        "epoch", "state", "pc", "cnt", "full_at",
    )

    def __init__(self, kind: str, leaf: int = 0):
        self.kind = kind
        self.leaf = leaf
        self.parent = None
        self.prev = None
        self.next = None
        self.first = None
        self.last = None
        self.nchild = 0
        self.epoch = 0
        self.state = "E"
        self.pc = []
        self.cnt = 0
        self.full_at = ""

    def children(self):
        c = self.first
        while c is not None:
            yield c
            c = c.next

    def __repr__(self):
        if self.kind == _LEAF:
            return f"L{self.leaf}"
        return f"{self.kind}[{' '.join(map(repr, self.children()))}]"


def _append(p: _Node, x: _Node) -> None:
    x.parent = p
    x.prev = p.last
    x.next = None
    if p.last is None:
        p.first = x
    else:
        p.last.next = x
    p.last = x
    p.nchild += 1


def _prepend(p: _Node, x: _Node) -> None:
    x.parent = p
    x.next = p.first
    x.prev = None
    if p.first is None:
        p.last = x
    else:
        p.first.prev = x
    p.first = x
    p.nchild += 1


def _detach(x: _Node) -> None:
    p = x.parent
    if x.prev is None:
        p.first = x.next
    else:
        x.prev.next = x.next
    if x.next is None:
        p.last = x.prev
    else:
        x.next.prev = x.prev
    x.parent = x.prev = x.next = None
    p.nchild -= 1


def _replace_in_parent(old: _Node, new: _Node) -> None:
    p = old.parent
    new.parent = p
    new.prev = old.prev
    new.next = old.next
    if old.prev is None:
        p.first = new
    else:
        old.prev.next = new
    if old.next is None:
        p.last = new
    else:
        old.next.prev = new
    old.parent = old.prev = old.next = None


def _splice_out(q: _Node, seq: list[_Node]) -> None:
    """Replace child q inside its parent by the node sequence seq."""
    p = q.parent
    before, after = q.prev, q.next
    _detach(q)
    prev = before
    for x in seq:
        x.parent = p
        x.prev = prev
        if prev is None:
            p.first = x
        else:
            prev.next = x
        prev = x
    if prev is not None:
        prev.next = after
    if after is None:
        p.last = prev
    elif prev is not None:
        after.prev = prev
    p.nchild += len(seq)


def _set_children(x: _Node, seq: list[_Node]) -> None:
    x.first = x.last = None
    x.nchild = 0
    for c in seq:
        c.prev = c.next = None
        _append(x, c)


def _oriented(q: _Node, full_first: bool) -> list[_Node]:
    """q's children listed with the full end first or last."""
    seq = list(q.children())
    head_full = q.full_at == "h"
    if head_full != full_first:
        seq.reverse()
    return seq


class PQTree:
    def __init__(self, n_leaves: int):
        self.n = n_leaves
        self.epoch = 0
        self.leaves = [None]
        if n_leaves == 0:
            self.root = None
        elif n_leaves == 1:
            self.root = _Node(_LEAF, 1)
            self.leaves.append(self.root)
        else:
            self.root = _Node(_P)
            for c in range(1, n_leaves + 1):
                leaf = _Node(_LEAF, c)
                self.leaves.append(leaf)
                _append(self.root, leaf)

    def frontier(self) -> list[int]:
        if self.root is None:
            return []
        out = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            if x.kind == _LEAF:
                out.append(x.leaf)
            else:
                stack.extend(reversed(list(x.children())))
        return out

    def _touch(self, x: _Node) -> bool:
        """Stamp x for this epoch; True if it was already stamped."""
        if x.epoch == self.epoch:
            return True
        x.epoch = self.epoch
        x.state = "E"
        x.pc = []
        x.cnt = 0
        return False

    def reduce(self, cols: Iterable[int]) -> bool:
        """Constrain the tree so the given columns are consecutive."""
        s = set(cols)
        if len(s) <= 1 or len(s) >= self.n:
            return True
        self.epoch += 1
        for c in s:
            leaf = self.leaves[c]
            self._touch(leaf)
            leaf.cnt = 1
            node = leaf
            while node.parent is not None:
                p = node.parent
                seen = self._touch(p)
                p.pc.append(node)
                if seen:
                    break
                node = p

        # Leaf counts, children before parents.
        order = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(x.pc)
        for x in reversed(order):
            if x.kind != _LEAF:
                x.cnt = sum(c.cnt for c in x.pc)

        proot = self.root
        total = len(s)
        while True:
            down = next((c for c in proot.pc if c.cnt == total), None)
            if down is None:
                break
            proot = down

        # Templates bottom-up within the pertinent subtree.
        post = []
        stack = [proot]
        while stack:
            x = stack.pop()
            post.append(x)
            stack.extend(x.pc)
        for x in reversed(post):
            if not self._apply(x, x is proot):
                return False
        return True

    def _apply(self, x: _Node, is_root: bool) -> bool:
        if x.kind == _LEAF:
            x.state = "F"
            return True
        fulls = [c for c in x.pc if c.state == "F"]
        partials = [c for c in x.pc if c.state == "P"]
        if not partials and len(fulls) == x.nchild:
            x.state = "F"
            return True
        if x.kind == _P:
            return self._apply_p(x, is_root, fulls, partials)
        return self._apply_q(x, is_root, fulls, partials)

    # P templates ---------------------------------------------------------

    def _apply_p(self, x, is_root, fulls, partials) -> bool:
        if len(partials) > 2 or (not is_root and len(partials) > 1):
            return False
        if is_root:
            if not partials:  # P2
                if len(fulls) >= 2:
                    for c in fulls:
                        _detach(c)
                    _append(x, self._group(fulls))
                return True
            if len(partials) == 1:  # P4
                q = partials[0]
                if fulls:
                    for c in fulls:
                        _detach(c)
                    pf = self._group(fulls)
                    if q.full_at == "h":
                        _prepend(q, pf)
                    else:
                        _append(q, pf)
                self._unwrap_singleton(x)
                return True
            # P6
            q1, q2 = partials
            for c in fulls:
                _detach(c)
            _detach(q2)
            seq = _oriented(q1, full_first=False)
            if fulls:
                seq.append(self._group(fulls))
            seq.extend(_oriented(q2, full_first=True))
            _set_children(q1, seq)
            q1.full_at = ""
            self._unwrap_singleton(x)
            return True
        # Non-root P becomes a partial Q.
        for c in fulls:
            _detach(c)
        pf = self._group(fulls) if fulls else None
        if not partials:  # P3
            rest = list(x.children())
            for c in rest:
                _detach(c)
            pe = self._group(rest) if rest else None
            seq = [n for n in (pe, pf) if n is not None]
            if len(seq) < 2:
                raise AssertionError("non-root P with nothing to separate")
            x.kind = _Q
            _set_children(x, seq)
        else:  # P5
            q = partials[0]
            _detach(q)
            rest = list(x.children())
            for c in rest:
                _detach(c)
            pe = self._group(rest) if rest else None
            seq = ([pe] if pe else []) + _oriented(q, full_first=False) + ([pf] if pf else [])
            x.kind = _Q
            _set_children(x, seq)
        x.state = "P"
        x.full_at = "t"
        return True

    # Q templates ---------------------------------------------------------

    def _apply_q(self, x, is_root, fulls, partials) -> bool:
        if len(partials) > 2 or (not is_root and len(partials) > 1):
            return False
        pcset = set(map(id, x.pc))
        c0 = x.pc[0]
        lb = c0
        while lb.prev is not None and id(lb.prev) in pcset:
            lb = lb.prev
        rb = c0
        while rb.next is not None and id(rb.next) in pcset:
            rb = rb.next
        run = 0
        c = lb
        while True:
            run += 1
            if c is rb:
                break
            c = c.next
        if run != len(x.pc):
            return False  # pertinent children not contiguous
        at_head = lb.prev is None
        at_tail = rb.next is None

        if is_root:  # Q3
            c = lb
            while c is not None:
                if c.state == "P" and c is not lb and c is not rb:
                    return False
                if c is rb:
                    break
                c = c.next
            if lb.state == "P":
                _splice_out(lb, _oriented(lb, full_first=False))
            if rb is not lb and rb.state == "P":
                _splice_out(rb, _oriented(rb, full_first=True))
            return True

        # Q2: block at one end, the single partial at its inner extreme.
        if not (at_head or at_tail):
            return False
        p = partials[0] if partials else None
        if p is not None:
            if at_head and at_tail:
                if p is rb:
                    at_tail = False
                elif p is lb:
                    at_head = False
                else:
                    return False
            if at_head and p is not rb:
                return False
            if at_tail and not at_head and p is not lb:
                return False
        inner = rb if at_head else lb
        c = lb
        while c is not None:
            if c.state != "F" and c is not inner:
                return False
            if c is rb:
                break
            c = c.next
        if p is not None:
            _splice_out(p, _oriented(p, full_first=at_head))
        x.state = "P"
        x.full_at = "h" if at_head else "t"
        return True

    # helpers --------------------------------------------------------------

    def _group(self, nodes: list[_Node]) -> _Node:
        if len(nodes) == 1:
            return nodes[0]
        p = _Node(_P)
        for c in nodes:
            _append(p, c)
        return p

    def _unwrap_singleton(self, x: _Node) -> None:
        """Replace a single-child pertinent root by its child."""
        if x.nchild != 1:
            return
        child = x.first
        if x.parent is None:
            _detach(child)
            child.parent = None
            self.root = child
        else:
            _detach(child)
            _replace_in_parent(x, child)

    def check(self) -> None:
        """Validate structural invariants (tests only)."""
        if self.root is None:
            return
        stack = [(self.root, None)]
        seen_leaves = set()
        while stack:
            x, parent = stack.pop()
            assert x.parent is parent
            if x.kind == _LEAF:
                assert x.leaf not in seen_leaves
                seen_leaves.add(x.leaf)
                continue
            kids = list(x.children())
            assert kids, f"{x.kind} node with no children"
            assert len(kids) == x.nchild
            assert x.first is kids[0] and x.last is kids[-1]
            if x.kind == _P:
                assert len(kids) >= 2
            for c in kids:
                stack.append((c, x))
        assert seen_leaves == set(range(1, self.n + 1))


def enumerate_frontiers(tree: PQTree) -> set[tuple[int, ...]]:
    """All leaf orders the tree represents (exponential; tests only)."""
    from itertools import permutations

    def expand(x) -> list[tuple[int, ...]]:
        if x.kind == _LEAF:
            return [(x.leaf,)]
        child_opts = [expand(c) for c in x.children()]
        outs = set()
        if x.kind == _Q:
            for flip in (False, True):
                opts = child_opts[::-1] if flip else child_opts
                outs |= _cat(opts)
        else:
            for perm in permutations(range(len(child_opts))):
                outs |= _cat([child_opts[i] for i in perm])
        return sorted(outs)

    def _cat(opts) -> set[tuple[int, ...]]:
        acc = {()}
        for block in opts:
            acc = {a + b for a in acc for b in block}
        return acc

    if tree.root is None:
        return {()}
    return set(expand(tree.root))
