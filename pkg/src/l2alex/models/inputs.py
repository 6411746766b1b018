from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator


class PresentationInput(BaseModel):
    """
    JSON form of a finite presentation with an optional map to Z^k.
    """
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "generators": ["a", "b"],
                "relators": ["a b a^-1 b^-1"],
                "phi": {"a": [1], "b": [1]},
            }
        }
    )

    generators: List[str] = Field(..., min_length=1, description="Ordered generator names")
    relators: List[str] = Field(default_factory=list, description="Relators in word syntax")
    phi: Optional[Dict[str, List[int]]] = Field(None, description="Image of each generator in Z^k")


class PDInput(BaseModel):
    """
    JSON form of a planar-diagram code.
    """
    model_config = ConfigDict(json_schema_extra={"example": {"pd": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]}})

    pd: List[List[int]] = Field(..., description="Crossings as 4-tuples of arc labels")

    @field_validator("pd")
    @classmethod
    def _four_tuples(cls, value: List[List[int]]) -> List[List[int]]:
        for crossing in value:
            if len(crossing) != 4 or any(label <= 0 for label in crossing):
                raise ValueError(f"Crossing {crossing} is not a 4-tuple of positive labels")
        return value


class EndoInput(BaseModel):
    """
    JSON form of a free-group endomorphism given by generator images.
    """
    model_config = ConfigDict(
        json_schema_extra={"example": {"generators": ["x", "y"], "images": ["x y", "y x y"]}}
    )

    generators: List[str] = Field(..., min_length=1)
    images: List[str] = Field(...)

    @field_validator("images")
    @classmethod
    def _one_image_per_generator(cls, value: List[str], info) -> List[str]:
        gens = info.data.get("generators")
        if gens is not None and len(gens) != len(value):
            raise ValueError(f"Expected {len(gens)} images, got {len(value)}")
        return value
