"""Pronoun replacement via coreference resolution.

The resolver is pluggable: any callable mapping a text to clusters of
character spans works. Resolution runs per story over the sentences exactly
as given (the shuffled presentation), never over any other ordering.
"""

from __future__ import annotations

from .spec import ModelUnavailableError

PRONOUNS = {
    "he", "him", "his", "she", "her", "hers", "it", "its",
    "they", "them", "their", "theirs",
}


def is_pronoun(mention: str) -> bool:
    return mention.strip().lower() in PRONOUNS


def default_resolver():
    """The stock resolver (fastcoref); raises a ModelUnavailableError naming
    the artifact when the library or its weights are missing."""
    try:
        from fastcoref import FCoref
    except ImportError as exc:
        raise ModelUnavailableError(
            "coreference preprocessing needs the fastcoref package and its "
            f"f-coref model weights (pip install fastcoref); import failed: {exc}"
        ) from None
    try:
        model = FCoref()
    except Exception as exc:
        raise ModelUnavailableError(
            f"cannot load the f-coref model weights: {exc}"
        ) from None

    def resolve(text: str):
        result = model.predict(texts=[text])[0]
        return result.get_clusters(as_strings=False)

    return resolve


def replace_pronouns(sentences, resolver) -> list[str]:
    """Replace pronoun mentions with their cluster's first non-pronoun
    mention. `resolver(text)` returns clusters of (start, end) char spans
    into the sentences joined by single spaces."""
    sentences = list(sentences)
    text = " ".join(sentences)
    # sentence k covers [starts[k], starts[k] + len(sentences[k]))
    starts = []
    pos = 0
    for s in sentences:
        starts.append(pos)
        pos += len(s) + 1

    replacements = []  # (sentence_idx, local_start, local_end, new_text)
    for cluster in resolver(text):
        mentions = [(int(a), int(b), text[a:b]) for a, b in cluster]
        antecedent = next((m for _, _, m in mentions if not is_pronoun(m)), None)
        if antecedent is None:
            continue  # nothing concrete to substitute
        for a, b, mention in mentions:
            if not is_pronoun(mention):
                continue
            k = max(i for i, st in enumerate(starts) if st <= a)
            if b > starts[k] + len(sentences[k]):
                continue  # spans a sentence boundary; leave untouched
            new = antecedent
            if mention[:1].isupper():
                new = new[:1].upper() + new[1:]
            replacements.append((k, a - starts[k], b - starts[k], new))

    out = sentences[:]
    # right-to-left per sentence so earlier offsets stay valid
    for k, a, b, new in sorted(replacements, key=lambda r: (r[0], -r[1])):
        out[k] = out[k][:a] + new + out[k][b:]
    return out
