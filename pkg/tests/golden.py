"""Table 1 / Figure 2 German-English example as frozen expected output."""

from importlib.resources import files

TABLE1_PATH = files("jointsot") / "data" / "table1.jsonl"

TABLE1_ROWS = {
    "inter0.0": "#ASR# Ich brauche das wirklich. #ST# I really need it.",
    "inter1.0": "#ST# I really need it. #ASR# Ich brauche das wirklich.",
    "inter0.5": "#ASR# Ich #ST# I #ASR# brauche #ST# really #ASR# das #ST# need #ASR# wirklich. #ST# it.",
    "align": "#ASR# Ich #ST# I #ASR# brauche das wirklich. #ST# really need it.",
}

TABLE1_LINKS = {(0, 0), (1, 2), (2, 3), (3, 1)}
