"""Exception hierarchy shared by all tamestrat modules."""


class TamestratError(Exception):
    """Base class; ``code`` is the stable name used in structured CLI errors."""

    code = "Error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


def _make(name, doc, base=TamestratError):
    cls = type(name, (base,), {"__doc__": doc, "code": name})
    return cls


ParseError = _make("ParseError", "Malformed polynomial, field, or file input.")
FieldMismatch = _make("FieldMismatch", "Operands live over different scalar fields.")
NotMonic = _make("NotMonic", "Polynomial is required to be monic.")
NotIrreducible = _make("NotIrreducible", "Polynomial is reducible (or irreducibility is undecided).")
ZeroPolynomial = _make("ZeroPolynomial", "The zero polynomial was passed where it is not allowed.")
ZeroDivision = _make("ZeroDivision", "Division by zero in a field or polynomial ring.")
NotUnit = _make("NotUnit", "Power series with zero constant term is not invertible.")
ZeroElement = _make("ZeroElement", "Element is zero to its stored precision.")
LengthMismatch = _make("LengthMismatch", "Dimension vector length does not match the quiver.")
NotAffine = _make("NotAffine", "Quadratic form radical is not one-dimensional.")
NotRegular = _make("NotRegular", "Dimension vector is not that of a simple regular module.")
LevelZero = _make("LevelZero", "Ray level must be at least one.")
NotComposable = _make("NotComposable", "Target of the first map differs from the source of the second.")
OutOfRange = _make("OutOfRange", "Tube index outside 1..m.")
BadLevel = _make("BadLevel", "Ray length too short for the requested exact sequence.")
PrecisionTooLow = _make("PrecisionTooLow", "Requested check needs more series precision.")
ZeroDenominator = _make("ZeroDenominator", "Fraction with zero denominator.")
DeltaMismatch = _make("DeltaMismatch", "Dedekind elements over different sets of primes.")
NotInRing = _make("NotInRing", "Fraction does not lie in the localized ring.")
Overlap = _make("Overlap", "Localization sets must be disjoint.")
IndexMismatch = _make("IndexMismatch", "Adele elements over different index families.")
EmptyU = _make("EmptyU", "The set of simple regular modules must be non-empty.")
SingleBlock = _make("SingleBlock", "Triangular ring with a single diagonal block.")
PartialClique = _make("PartialClique", "Selection contains a clique only partially.")
BadCliques = _make("BadCliques", "Clique selection is inconsistent with the tube ranks of the quiver.")
