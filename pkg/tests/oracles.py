"""Brute-force oracles, deliberately independent of the library's search code."""

import itertools

from ocvarieties.words import Word


def factors(v, allow_empty):
    t = tuple(v)
    out = {t[i:j] for i in range(len(t) + 1) for j in range(i, len(t) + 1)}
    if not allow_empty:
        out.discard(())
    return sorted(out)


def substitute(mapping, u):
    out = []
    for a in u:
        out.extend(mapping.get(a, (a,)))
    return tuple(out)


def occurrences(pattern, w):
    k = len(pattern)
    return [i for i in range(len(w) - k + 1) if tuple(w[i:i + k]) == pattern]


def brute_encounter_exists(u, v):
    """Does some nonerasing substitution image of u occur as a factor of v?"""
    letters = sorted(set(u))
    facs = factors(v, allow_empty=False)
    for images in itertools.product(facs, repeat=len(letters)):
        if occurrences(substitute(dict(zip(letters, images)), u), tuple(v)):
            return True
    return False


def brute_successors(w, identities):
    """One-step rewrites of w: every monoid substitution into factors of w, every occurrence."""
    w = tuple(w)
    facs = factors(w, allow_empty=True)
    out = set()
    for lhs, rhs in identities:
        for src, dst in ((tuple(lhs), tuple(rhs)), (tuple(rhs), tuple(lhs))):
            letters = sorted(set(src))
            for images in itertools.product(facs, repeat=len(letters)):
                m = dict(zip(letters, images))
                pat, rep = substitute(m, src), substitute(m, dst)
                for i in occurrences(pat, w):
                    out.add(w[:i] + rep + w[i + len(pat):])
    return out


def brute_reachable(u, identities, max_len):
    seen = {tuple(u)}
    stack = [tuple(u)]
    while stack:
        w = stack.pop()
        for nxt in brute_successors(w, identities):
            if len(nxt) <= max_len and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return {Word(t) for t in seen}


def bell(n):
    """Bell numbers via B(m+1) = sum_k C(m, k) B(k)."""
    b = [1]
    for m in range(n):
        b.append(sum(_binom(m, k) * b[k] for k in range(m + 1)))
    return b[n]


def _binom(n, k):
    r = 1
    for i in range(k):
        r = r * (n - i) // (i + 1)
    return r


def all_set_partitions(items):
    """Partitions as frozensets of frozensets, by recursive insertion."""
    items = list(items)
    if not items:
        yield frozenset()
        return
    first, rest = items[0], items[1:]
    for p in all_set_partitions(rest):
        blocks = list(p)
        yield frozenset(blocks + [frozenset([first])])
        for i, b in enumerate(blocks):
            yield frozenset(blocks[:i] + [b | {first}] + blocks[i + 1:])


def as_blockset(p):
    return frozenset(frozenset(b) for b in p.blocks)


def blockset_leq(p, q):
    return all(any(b <= c for c in q) for b in p)


def small_lattices(max_size):
    """All lattices with 1..max_size elements (as order relations), with isomorphic copies."""
    out = []
    for n in range(1, max_size + 1):
        pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            le = {(i, i) for i in range(n)}
            le |= {p for p, bit in zip(pairs, bits) if bit}
            if any((j, i) in le for (i, j) in le if i != j):
                continue
            if any((i, k) not in le for (i, j) in le for (j2, k) in le if j == j2):
                continue
            join, meet = {}, {}
            ok = True
            for a in range(n):
                for b in range(n):
                    ub = [c for c in range(n) if (a, c) in le and (b, c) in le]
                    lb = [c for c in range(n) if (c, a) in le and (c, b) in le]
                    lub = [c for c in ub if all((c, d) in le for d in ub)]
                    glb = [c for c in lb if all((d, c) in le for d in lb)]
                    if len(lub) != 1 or len(glb) != 1:
                        ok = False
                        break
                    join[a, b], meet[a, b] = lub[0], glb[0]
                if not ok:
                    break
            if ok:
                out.append((n, join, meet))
    return out


def certified_contexts(max_len, max_size):
    """Anti-chain word sets over {x, y} meeting the deletion hypothesis, sizes 1..max_size."""
    from ocvarieties.words import check_hypothesis, is_antichain

    classes = {}
    for length in range(2, max_len + 1):
        for t in itertools.product((0, 1), repeat=length):
            if len(set(t)) == 2:
                classes.setdefault((t.count(0), t.count(1)), []).append(Word(t))
    out = []
    for words in classes.values():
        for k in range(1, max_size + 1):
            for combo in itertools.combinations(words, k):
                if is_antichain(combo) and check_hypothesis(combo) is None:
                    out.append(list(combo))
    return out


def blockset_meet(p, q):
    return frozenset(b & c for b in p for c in q if b & c)


def blockset_join(p, q):
    blocks = [set(b) for b in p] + [set(c) for c in q]
    merged = True
    while merged:
        merged = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if blocks[i] & blocks[j]:
                    blocks[i] |= blocks.pop(j)
                    merged = True
                    break
            if merged:
                break
    return frozenset(frozenset(b) for b in blocks)


def blockset_evaluate(term, assignment):
    """Evaluate a lattice term over blockset partitions, without the library's lattice code."""
    from ocvarieties.lattice_terms import Meet, Var

    if isinstance(term, Var):
        return assignment[term.name]
    left = blockset_evaluate(term.left, assignment)
    right = blockset_evaluate(term.right, assignment)
    return blockset_meet(left, right) if isinstance(term, Meet) else blockset_join(left, right)
