"""Thread script files.

One declaration per line, `#` starts a comment:

    decl   := NAME "=" proc
    proc   := "S" | "D" | "tau" "." proc | NAME
            | action
            | action ";" proc            (sequencing: a ? p : p)
            | action "?" proc ":" proc   (postconditional composition)
    action := [IDENT "."] IDENT [ "(" names ")" ]

A declaration named `main` selects the entry: when its body is a bare
name the entry is that declaration, otherwise the body itself is run.
Actions without a focus prefix go to the `dld` service; a trailing bare
action is short for `action ; S`.
"""

from __future__ import annotations

from .errors import ParseError
from .parsing import _Cursor, parse_action_at, tokenize
from .threads import DEADLOCK, DEFAULT_FOCUS, STOP, TAU, Call, Post, Ref, ThreadSpec, prefix
from .universe import Universe

_KEYWORDS = {"S", "D", "tau"}


def _parse_call(cur: _Cursor, universe: Universe) -> Call:
    focus = DEFAULT_FOCUS
    if cur.peek(0)[0] == "ident" and cur.peek(1)[1] == ".":
        focus = cur.next()[1]
        cur.expect(".")
    if focus == DEFAULT_FOCUS:
        return Call(focus, parse_action_at(cur, universe))
    return Call(focus, _raw_method(cur))


def _raw_method(cur: _Cursor) -> str:
    kind, name, pos = cur.next()
    if kind != "ident":
        raise ParseError(f"expected a method name, got {name!r}", pos)
    if cur.peek()[1] != "(":
        return name
    cur.next()
    parts = []
    while cur.peek()[1] != ")":
        parts.append(cur.next()[1])
        if cur.peek()[1] == ",":
            cur.next()
    cur.expect(")")
    return f"{name}({','.join(parts)})"


def _parse_proc(cur: _Cursor, universe: Universe, names):
    kind, value, pos = cur.peek()
    if value == "S":
        cur.next()
        return STOP
    if value == "D":
        cur.next()
        return DEADLOCK
    if value == "tau":
        cur.next()
        cur.expect(".")
        return prefix(TAU, _parse_proc(cur, universe, names))
    if kind == "ident" and value in names and cur.peek(1)[1] not in ("(", ".", ";", "?"):
        cur.next()
        return Ref(value)
    call = _parse_call(cur, universe)
    nxt = cur.peek()[1]
    if nxt == ";":
        cur.next()
        return prefix(call, _parse_proc(cur, universe, names))
    if nxt == "?":
        cur.next()
        then = _parse_proc(cur, universe, names)
        cur.expect(":")
        orelse = _parse_proc(cur, universe, names)
        return Post(call, then, orelse)
    return prefix(call, STOP)


def parse_spec(text: str, universe: Universe) -> ThreadSpec:
    decls = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected NAME = proc", 0)
        name, body = line.split("=", 1)
        decls.append((name.strip(), body.strip(), lineno))
    if not decls:
        raise ParseError("empty thread script", 0)
    names = {name for name, _, _ in decls}
    equations = {}
    main_ref = None
    for name, body, lineno in decls:
        cur = _Cursor(tokenize(body), len(body))
        if name == "main" and cur.peek()[0] == "ident" \
                and cur.peek()[1] in names and cur.peek(1)[0] == "eof":
            main_ref = cur.next()[1]
            continue
        thread = _parse_proc(cur, universe, names)
        if not cur.at_end():
            raise ParseError(f"line {lineno}: trailing input "
                             f"{cur.peek()[1]!r}", cur.peek()[2])
        equations[name] = thread
    if main_ref is None:
        if "main" not in equations:
            raise ParseError("script has no main declaration", 0)
        main_ref = "main"
    return ThreadSpec(equations, main_ref)
