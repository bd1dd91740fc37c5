"""Hand-evaluated expected outputs for the bundled demo programs.

These were worked out on paper from the workspace files, not captured
from the interpreter, so they stay an independent check on it.  Each
entry notes the trace that produced it.
"""

# demo name -> (status, lines, message-substring or None)
EXPECTED = {
    # print "Hello!"
    "hello": ("ok", ["Hello!"], None),
    # repeat 4 { print "ha" }: four iterations, one line each
    "loop": ("ok", ["ha"] * 4, None),
    # repeat 2 { repeat 3 { print "x" } }: 2*3 = 6 lines
    "nested_loops": ("ok", ["x"] * 6, None),
    # if (2 < 3) then print "yes" else print "no": 2 < 3 holds
    "conditional": ("ok", ["yes"], None),
    # if false then "then" else "else": condition is false
    "conditional_else": ("ok", ["else"], None),
    # set x = 42; print x
    "variables": ("ok", ["42"], None),
    # set n = 3; repeat 3 { print n; set n = n - 1 }
    # n: 3 -> print 3, n=2 -> print 2, n=1 -> print 1, n=0
    "countdown": ("ok", ["3", "2", "1"], None),
    # print (2 + 3) * 4 = 20
    "arithmetic": ("ok", ["20"], None),
    # stack A prints "first", stack B prints "second"; label order
    "two_stacks": ("ok", ["first", "second"], None),
    # print (true and (not false)) = true
    "logic": ("ok", ["true"], None),
    # print with an empty VALUE slot: faults immediately, no output;
    # the message names block 1 of stack A
    "empty_slot_error": ("error", [], "empty value slot on block 1 of stack A"),
    # repeat 1000000000 { set x = 1 }: blows the step budget, no output
    "step_limit": ("step-limit-exceeded", [], None),
}
