import unicodedata


def fold(text: str) -> str:
    """Case-fold and NFC-normalize; the matching key used for keywords and terms."""
    return unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).casefold())


def contains_any(folded_text: str, folded_terms) -> bool:
    return any(term in folded_text for term in folded_terms)
