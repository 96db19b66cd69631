"""Experience library: storage, selection, and anchoring of prior paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .core import Config, PathExperience, distance, load_path, path_to_json
from .errors import DimensionMismatch, EmptyLibrary
from .ioutil import read_json, write_json_atomic
from .planners.segments import map_path_onto_query

INDEX_NAME = "index.json"


@dataclass
class ExperienceLibrary:
    """Ordered collection of prior paths sharing one dimension."""

    experiences: list[PathExperience] = field(default_factory=list)

    def __post_init__(self):
        dims = {e.dimension for e in self.experiences}
        if len(dims) > 1:
            raise DimensionMismatch(f"library mixes dimensions {sorted(dims)}")

    def __len__(self) -> int:
        return len(self.experiences)

    def __getitem__(self, i: int) -> PathExperience:
        return self.experiences[i]

    @property
    def dimension(self) -> int | None:
        return self.experiences[0].dimension if self.experiences else None

    def prefix(self, k: int) -> "ExperienceLibrary":
        """First k entries, the sub-library used for a library-size sweep."""
        return ExperienceLibrary(self.experiences[:k])

    def append(self, path: PathExperience) -> None:
        if self.experiences and path.dimension != self.dimension:
            raise DimensionMismatch(
                f"experience dimension {path.dimension} does not match "
                f"library dimension {self.dimension}"
            )
        self.experiences.append(path)


def select_index(library: ExperienceLibrary, q_start: Config, q_goal: Config) -> int:
    """Index of the experience whose endpoints sit closest to the query.

    Score is dist(start, experience start) + dist(goal, experience end);
    ties resolve to the lowest index.
    """
    if len(library) == 0:
        raise EmptyLibrary("cannot select from an empty library")
    if library.dimension != len(q_start) or library.dimension != len(q_goal):
        raise DimensionMismatch("query dimension does not match the library")
    best, best_score = 0, float("inf")
    for i, exp in enumerate(library.experiences):
        score = distance(exp.states[0].q, q_start) + distance(exp.states[-1].q, q_goal)
        if score < best_score:
            best, best_score = i, score
    return best


def select_experience(
    library: ExperienceLibrary, q_start: Config, q_goal: Config
) -> PathExperience:
    return library[select_index(library, q_start, q_goal)]


def map_experience(
    prior: PathExperience, q_start: Config, q_goal: Config
) -> PathExperience:
    """Anchor a prior onto a query; endpoints land on the query exactly."""
    return map_path_onto_query(prior, q_start, q_goal)


def _entry_name(i: int) -> str:
    return f"exp-{i:04d}.json"


def save_library(library: ExperienceLibrary, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for i, exp in enumerate(library.experiences):
        name = _entry_name(i)
        write_json_atomic(directory / name, path_to_json(exp))
        names.append(name)
    write_json_atomic(directory / INDEX_NAME, {"experiences": names})


def load_library(directory) -> ExperienceLibrary:
    directory = Path(directory)
    index = read_json(directory / INDEX_NAME)
    names = index.get("experiences")
    if not isinstance(names, list):
        raise ValueError(f"malformed library index in {directory}")
    return ExperienceLibrary([load_path(directory / name) for name in names])


def append_to_library(directory, path: PathExperience) -> str:
    """Grow mode: add one experience file and update the index."""
    directory = Path(directory)
    index_file = directory / INDEX_NAME
    names = read_json(index_file).get("experiences", []) if index_file.exists() else []
    name = _entry_name(len(names))
    library = load_library(directory) if names else ExperienceLibrary()
    library.append(path)  # dimension check before touching disk
    write_json_atomic(directory / name, path_to_json(path))
    write_json_atomic(index_file, {"experiences": names + [name]})
    return name
