"""Fixed, versioned prompt templates for topic extraction.

The wording is part of the construction contract: changing a template is
a new PROMPT_VERSION, recorded in every construction manifest.
"""

PROMPT_VERSION = "1"

DOCUMENT_TOPICS_TEMPLATE = (
    "List the 3-7 main topics of the following document. "
    "Respond with a JSON array of short topic strings and nothing else.\n"
    "\n"
    "TEXT:\n"
    "{text}"
)

SENTENCE_TOPICS_TEMPLATE = (
    "List the topics of this sentence. "
    "Respond with a JSON array of short topic strings and nothing else.\n"
    "\n"
    "TEXT:\n"
    "{text}"
)

COMMON_TOPIC_TEMPLATE = (
    "Two sentences from different documents follow. "
    "Name the single topic they have in common. "
    "Respond with one short topic phrase and nothing else.\n"
    "\n"
    "SENTENCE 1:\n"
    "{first}\n"
    "\n"
    "SENTENCE 2:\n"
    "{second}"
)


def topic_prompt(text: str, level: str) -> str:
    if level == "document":
        return DOCUMENT_TOPICS_TEMPLATE.format(text=text)
    if level == "sentence":
        return SENTENCE_TOPICS_TEMPLATE.format(text=text)
    raise ValueError(f"unknown extraction level: {level!r}")


def common_topic_prompt(first: str, second: str) -> str:
    return COMMON_TOPIC_TEMPLATE.format(first=first, second=second)


def split_prompt_payload(prompt: str) -> list[str]:
    """Recover the raw text unit(s) embedded in one of the fixed templates.

    Used by the deterministic mock providers, which must answer about the
    same text a real model would see.
    """
    if "\nSENTENCE 1:\n" in prompt:
        _, rest = prompt.split("\nSENTENCE 1:\n", 1)
        first, second = rest.split("\n\nSENTENCE 2:\n", 1)
        return [first, second]
    if "\nTEXT:\n" in prompt:
        return [prompt.split("\nTEXT:\n", 1)[1]]
    raise ValueError("prompt does not match any known template")
