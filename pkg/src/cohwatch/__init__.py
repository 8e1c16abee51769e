"""cohwatch: cohesion-drift monitoring for C++ function histories.

The pipeline mines function version histories out of a git repository,
scores how confidently a fill-mask language model can recover each
function's name from its body, and ranks consecutive version pairs by how
sharply that confidence drops.  A sharp drop is the tell: injected code
rarely matches the story the function name tells.
"""

__version__ = "0.1.0"
