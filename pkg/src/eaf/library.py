"""The standard block vocabulary: statements for a tiny imperative
language plus the value blocks needed to exercise type-aware filtering.
"""

from __future__ import annotations

from .blocks import BlockDefinition, BlockKind, BlockSet, FieldKind, FieldSpec, ValueType

STANDARD_DEFINITIONS = [
    BlockDefinition(
        def_id="print",
        kind=BlockKind.STATEMENT,
        value_inputs=(("VALUE", ValueType.ANY),),
    ),
    BlockDefinition(
        def_id="set_var",
        kind=BlockKind.STATEMENT,
        fields=(FieldSpec("NAME", FieldKind.TEXT, default="x"),),
        value_inputs=(("VALUE", ValueType.ANY),),
    ),
    BlockDefinition(
        def_id="repeat",
        kind=BlockKind.STATEMENT,
        value_inputs=(("TIMES", ValueType.NUMBER),),
        statement_inputs=("BODY",),
    ),
    BlockDefinition(
        def_id="if",
        kind=BlockKind.STATEMENT,
        value_inputs=(("COND", ValueType.BOOLEAN),),
        statement_inputs=("THEN", "ELSE"),
    ),
    BlockDefinition(
        def_id="number",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("VALUE", FieldKind.NUMBER, default=0),),
        value_output=ValueType.NUMBER,
    ),
    BlockDefinition(
        def_id="text",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("VALUE", FieldKind.TEXT, default=""),),
        value_output=ValueType.TEXT,
    ),
    BlockDefinition(
        def_id="boolean",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("VALUE", FieldKind.CHOICE, options=("true", "false"), default="true"),),
        value_output=ValueType.BOOLEAN,
    ),
    BlockDefinition(
        def_id="var_get",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("NAME", FieldKind.TEXT, default="x"),),
        value_output=ValueType.ANY,
    ),
    BlockDefinition(
        def_id="arithmetic",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("OP", FieldKind.CHOICE, options=("+", "-", "*", "/"), default="+"),),
        value_inputs=(("A", ValueType.NUMBER), ("B", ValueType.NUMBER)),
        value_output=ValueType.NUMBER,
    ),
    BlockDefinition(
        def_id="compare",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("OP", FieldKind.CHOICE, options=("<", "=", ">"), default="<"),),
        value_inputs=(("A", ValueType.ANY), ("B", ValueType.ANY)),
        value_output=ValueType.BOOLEAN,
    ),
    BlockDefinition(
        def_id="logic",
        kind=BlockKind.VALUE,
        fields=(FieldSpec("OP", FieldKind.CHOICE, options=("and", "or"), default="and"),),
        value_inputs=(("A", ValueType.BOOLEAN), ("B", ValueType.BOOLEAN)),
        value_output=ValueType.BOOLEAN,
    ),
    BlockDefinition(
        def_id="not",
        kind=BlockKind.VALUE,
        value_inputs=(("A", ValueType.BOOLEAN),),
        value_output=ValueType.BOOLEAN,
    ),
]

# Toolbox layout: category name -> definition ids, in announcement order.
STANDARD_CATEGORIES: list[tuple[str, list[str]]] = [
    ("Statements", ["print", "set_var", "repeat", "if"]),
    ("Values", ["number", "text", "boolean", "var_get"]),
    ("Operators", ["arithmetic", "compare", "logic", "not"]),
]


def standard_block_set() -> BlockSet:
    return BlockSet(STANDARD_DEFINITIONS)
