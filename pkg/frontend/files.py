from pathlib import Path

from frontend.specfile import SpecFile, parse

ZOO_DIR = Path(__file__).resolve().parent / "zoo"

ZOO_PREFIX = "zoo:"


def fixtures() -> dict[str, Path]:
    """
    The built-in fixtures by name.
    """
    return {path.stem: path for path in sorted(ZOO_DIR.glob("*.lcf"))}


def resolve_path(reference: str) -> Path:
    """
    A file path, or `zoo:<name>` for a built-in fixture.
    """
    if reference.startswith(ZOO_PREFIX):
        name = reference.removeprefix(ZOO_PREFIX)
        try:
            return fixtures()[name]
        except KeyError:
            raise FileNotFoundError(f"no built-in fixture called {name}")
    return Path(reference)


def read_source(reference: str) -> str:
    return resolve_path(reference).read_text(encoding="utf-8")


def load(reference: str) -> SpecFile:
    return parse(read_source(reference))
