"""Opcodes for compiled expression programs.

A program is a postfix sequence over (ops, args, consts).  ``args`` holds the
constant-pool index for OP_CONST entries and -1 elsewhere.  The values below
must stay in sync with the enum in ``_core.pyx``.
"""

OP_CONST = 0
OP_VAR = 1
OP_NEG = 2
OP_ADD = 3
OP_SUB = 4
OP_MUL = 5
OP_DIV = 6
OP_POW = 7
OP_EXP = 8
OP_LN = 9
OP_SIN = 10
OP_COS = 11
OP_SQRT = 12
OP_ABS = 13

FUNCTION_OPS = {
    "exp": OP_EXP,
    "ln": OP_LN,
    "sin": OP_SIN,
    "cos": OP_COS,
    "sqrt": OP_SQRT,
    "abs": OP_ABS,
}

BINARY_OPS = {
    "add": OP_ADD,
    "sub": OP_SUB,
    "mul": OP_MUL,
    "div": OP_DIV,
    "pow": OP_POW,
}
