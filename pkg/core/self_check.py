"""
Environment Self-Check Module
Checks that the shipped data files exist and parse before any command runs.
"""
import json
import logging
import os

logger = logging.getLogger("SelfCheck")

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "data")


def self_check():
    """
    Perform environment self-check.
    Returns: (success: bool, errors: list of {id, title, message, fixable})
    """
    from .errors import LatticeError
    from .equations import load_equations
    from .model import load_file

    errors = []

    # 1. Model files
    for name in ("o6", "mo2", "woml20"):
        path = os.path.join(DATA_DIR, "models", f"{name}.txt")
        if not os.path.exists(path):
            errors.append({
                "id": f"model-{name}",
                "title": "Model File Missing",
                "message": f"data/models/{name}.txt not found.",
                "fixable": False
            })
            continue
        try:
            load_file(path)
        except LatticeError as e:
            errors.append({
                "id": f"model-{name}",
                "title": "Model File Invalid",
                "message": f"data/models/{name}.txt: {e}",
                "fixable": False
            })

    # 2. Product table
    try:
        with open(os.path.join(DATA_DIR, "table1.json"), "r", encoding="utf-8") as f:
            rows = json.load(f)["rows"]
        if len(rows) != 6 or any(len(r) != 6 or not all(1 <= x <= 96 for x in r) for r in rows):
            raise ValueError("expected 6 rows of 6 Beran indices")
    except (OSError, KeyError, ValueError, TypeError) as e:
        errors.append({
            "id": "table1",
            "title": "Product Table Invalid",
            "message": f"data/table1.json: {e}",
            "fixable": False
        })

    # 3. Equation aliases
    try:
        load_equations()
    except (OSError, KeyError, ValueError, LatticeError) as e:
        errors.append({
            "id": "equations",
            "title": "Equation Aliases Invalid",
            "message": f"data/equations.json: {e}",
            "fixable": False
        })

    # 4. Errata ledger
    try:
        with open(os.path.join(DATA_DIR, "errata.json"), "r", encoding="utf-8") as f:
            errata = json.load(f)
        if not all("id" in e and "decision" in e for e in errata):
            raise ValueError("every erratum needs an id and a decision")
    except (OSError, ValueError, TypeError) as e:
        errors.append({
            "id": "errata",
            "title": "Errata Ledger Invalid",
            "message": f"data/errata.json: {e}",
            "fixable": False
        })

    if errors:
        for e in errors:
            logger.error("%s: %s", e["title"], e["message"])
        return False, errors

    return True, []
