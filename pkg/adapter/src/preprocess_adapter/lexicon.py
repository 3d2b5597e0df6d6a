"""Word lists behind the rule-based tagger and the feature embedder.

Coverage is tuned for short household manipulation commands. Unknown
words fall through to suffix rules and then to NOUN, which is the safest
default in this register.
"""

# closed classes resolve unconditionally
DETERMINERS = frozenset({
    "the", "a", "an", "this", "that", "these", "those", "some", "any",
    "each", "every"})
ADPOSITIONS = frozenset({
    "in", "on", "of", "to", "at", "from", "into", "onto", "under",
    "over", "with", "without", "behind", "near", "by", "inside",
    "outside", "beside", "above", "below", "off", "up", "down",
    "toward", "towards"})
PRONOUNS = frozenset({
    "you", "it", "i", "me", "we", "they", "them", "him", "her", "us"})
AUXILIARIES = frozenset({
    "could", "can", "would", "will", "should", "shall", "must", "may",
    "might", "do", "does", "did", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had"})
COORDINATORS = frozenset({"and", "or", "but"})
INTERJECTIONS = frozenset({"please", "hey", "hi", "hello"})

VERBS = frozenset({
    "put", "place", "open", "close", "shut", "push", "pull", "pick",
    "stack", "set", "move", "grab", "take", "bring", "lift", "slide",
    "rotate", "flip", "drop", "hold", "release", "insert", "remove",
    "fetch", "carry", "pour", "wipe", "press", "grasp", "reach",
    "position", "arrange", "align", "shift", "tilt", "raise", "lower",
    "want", "need", "like", "go", "get", "make", "help", "try",
    "start", "stop", "turn", "switch"})

ADJECTIVES = frozenset({
    "black", "white", "red", "blue", "green", "yellow", "brown",
    "wooden", "metal", "plastic", "glass", "small", "large", "big",
    "little", "new", "old", "upper", "empty", "full", "clean",
    "dirty", "heavy", "light", "round", "square", "flat", "tall",
    "short", "wide", "narrow"})

ADVERBS = frozenset({
    "carefully", "gently", "slowly", "quickly", "now", "then",
    "here", "there", "again", "first", "next"})

NOUNS = frozenset({
    "bowl", "cheese", "cream", "drawer", "cabinet", "stove", "bottle",
    "wine", "rack", "plate", "table", "ketchup", "basket", "vessel",
    "shelf", "counter", "microwave", "oven", "sink", "door", "handle",
    "knob", "tray", "container", "bin", "box", "cup", "mug", "pan",
    "pot", "lid", "towel", "sponge", "soap", "faucet", "fridge",
    "refrigerator", "dish", "butter", "milk", "mustard", "sauce",
    "jar", "can", "bag", "cloth", "burner", "surface", "edge",
    "corner", "side", "spot", "area", "kitchen"})

NUMBER_WORDS = frozenset({
    "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "zero"})

# resolved by context: adjectival before a nominal, nominal otherwise
POSITION_WORDS = frozenset({
    "middle", "center", "top", "bottom", "front", "back", "left",
    "right"})

# resolved by context: nominal after a determiner phrase, verbal when
# clause-initial or after a subject
NOUN_VERB_WORDS = frozenset({"spread", "dip", "stand", "rest", "lean"})

# verbs that take a bare particle, e.g. "turn on", "pick up"
PHRASAL_VERBS = frozenset({
    "turn", "pick", "switch", "put", "take", "lift", "shut"})

# words sharing a group get correlated embedding vectors; everything
# else is pairwise near-orthogonal
SEMANTIC_GROUPS = {
    "placement": ("put", "place", "stack", "set", "arrange", "position"),
    "grasping": ("pick", "grab", "take", "lift", "grasp", "fetch"),
    "motion": ("push", "pull", "slide", "move", "shift"),
    "aperture": ("open", "close", "shut"),
    "activation": ("turn", "switch", "start", "stop"),
    "containers": ("bowl", "vessel", "basket", "container", "bin",
                   "pot", "box"),
    "flatware": ("plate", "dish", "tray"),
    "dairy": ("cream", "cheese", "butter", "spread", "milk"),
    "condiments": ("ketchup", "mustard", "sauce"),
    "storage": ("drawer", "cabinet", "shelf", "rack", "closet"),
    "appliances": ("stove", "oven", "microwave", "fridge",
                   "refrigerator"),
    "surfaces": ("table", "counter", "desk"),
    "vessels": ("bottle", "jar", "can", "cup", "mug"),
    "positions": ("middle", "center", "top", "bottom", "front", "back",
                  "left", "right", "upper", "lower"),
    "colors": ("black", "white", "red", "blue", "green", "yellow",
               "brown"),
    "materials": ("wooden", "metal", "plastic", "glass"),
}

GROUP_OF_WORD = {
    word: group
    for group, words in SEMANTIC_GROUPS.items()
    for word in words
}
