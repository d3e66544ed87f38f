"""The peer-review grammar and accreditation table, transcribed by hand."""

from lsawfp.model import Mode

SEQ, PAR = Mode.SEQ, Mode.PAR

SORTS = {"A", "B", "C", "D", "S1", "E1", "E2", "F", "G1", "G2", "H1", "H2", "I1", "I2"}
RESTRUCTURING = {"S1"}
AXIOMS = {"A"}

PRODUCTIONS = {
    "P1": ("A", ("B", "D"), SEQ),
    "P2": ("A", ("C", "D"), SEQ),
    "P3": ("C", ("S1", "F"), SEQ),
    "P4": ("S1", ("E1", "E2"), PAR),
    "P5": ("E1", ("G1",), SEQ),
    "P6": ("E2", ("G2",), SEQ),
    "P7": ("E1", ("E1",), SEQ),
    "P8": ("E2", ("E2",), SEQ),
    "P9": ("G1", ("H1", "I1"), SEQ),
    "P10": ("G2", ("H2", "I2"), SEQ),
    "P11": ("B", (), SEQ),
    "P12": ("D", (), SEQ),
    "P13": ("F", (), SEQ),
    "P14": ("H1", (), SEQ),
    "P15": ("I1", (), SEQ),
    "P16": ("H2", (), SEQ),
    "P17": ("I2", (), SEQ),
}

TABLE = {
    "EC": ({"A", "B", "C", "D", "H1", "H2", "I1", "I2", "F"}, {"A", "B", "D"}, {"C"}),
    "AE": (
        {"A", "C", "S1", "E1", "E2", "F", "H1", "H2", "I1", "I2"},
        {"C", "S1", "E1", "E2", "F"},
        {"G1", "G2"},
    ),
    "R1": ({"C", "G1", "H1", "I1"}, {"G1", "H1", "I1"}, set()),
    "R2": ({"C", "G2", "H2", "I2"}, {"G2", "H2", "I2"}, set()),
}
