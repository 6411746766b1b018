import json
import logging
from pathlib import Path
from typing import Any, List, Type, TypeVar

from pydantic import BaseModel, ValidationError

from .errors import ParseError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_json(path: str) -> Any:
    """Load a JSON document, turning I/O and syntax problems into ParseError."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"Cannot read {path}: {e}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}")


def load_model(path: str, model: Type[ModelT]) -> ModelT:
    """Load and validate a JSON input file against a pydantic model."""
    data = read_json(path)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"{path} is not a valid {model.__name__}: {e.errors()[0]['msg']}")


def load_int_matrix(path: str) -> List[List[int]]:
    data = read_json(path)
    if isinstance(data, dict) and "matrix" in data:
        data = data["matrix"]
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError(f"{path} must hold a list of integer rows")
    try:
        return [[int(v) for v in row] for row in data]
    except (TypeError, ValueError):
        raise ParseError(f"{path} contains non-integer entries")


def parse_direction(text: str) -> List[int]:
    """Parse "1,-1" into [1, -1]."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ParseError(f"Malformed direction {text!r}; expected comma-separated integers")
