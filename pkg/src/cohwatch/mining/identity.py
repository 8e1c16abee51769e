"""Function identity: what makes two definitions "the same function".

A function is identified by its (qualified) name, its normalized argument
type spellings, and the repository-relative path of the file it lives in.
Overloads therefore get separate histories, renames start new histories,
and moving a definition to another file starts a new history as well.
"""

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class FunctionIdentity:
    name: str
    arg_types: tuple
    file_path: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("function identity requires a non-empty name")
        if not self.file_path:
            raise ValueError("function identity requires a file path")


def identity_key(identity):
    """Render an identity as ``file_path::name(arg1,arg2,...)``.

    The rendering is injective for distinct identities: the trailing
    parenthesised argument list is unambiguous, and the argument spellings
    are joined with bare commas.
    """
    args = ",".join(identity.arg_types)
    return f"{identity.file_path}::{identity.name}({args})"


__all__ = ["FunctionIdentity", "identity_key"]
