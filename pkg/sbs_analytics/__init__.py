__version__ = "1.0.0"

# key: [description, option type, default]
OPTIONS_ANALYSIS_DEFAULT = {
    "corpus": ["Corpus CSV, relative to the config file.", "File", None],
    "output": ["Output directory, relative to the config file.", "Path", "sbs-output"],
    "language": ["Stopword list and stemmer language.", "Language", "english"],
    "stopwords": ["Stopword file overriding the bundled list.", "Path", None],
    "intervals": ["Analysis time intervals.", "Intervals", None],
    "cooc_range": ["Maximum token distance counted as co-occurrence.", "PositiveInteger", 7],
    "min_cooc": ["Minimum co-occurrence weight kept in networks.", "NonNegativeFloat", 0.0],
    "text_fraction": ["Leading fraction of each document's tokens analyzed.", "Fraction", 1.0],
    "standardization": ["z_score, min_max or median_iqr.", "Standardization", "z_score"],
    "brands": ["Brands as {id, aliases} mappings.", "Brands", None],
    "lexicon": ["VADER-format sentiment lexicon.", "Path", None],
    "seed": ["Seed for topic extraction.", "Integer", 42],
    "workers": ["Parallel workers for time intervals and target-word trials.", "PositiveInteger", 1],
    "top_words": ["Most common words reported.", "PositiveInteger", 20],
    "associations": ["Top associations per brand, also the unique-association window.", "PositiveInteger", 25],
    "topic_prune": ["Negligible-link threshold for topics; empty means min_cooc.", "OptionalFloat", None],
    "topic_words": ["Words listed per topic.", "PositiveInteger", 10],
    "target_budget": ["Target words suggested per brand.", "PositiveInteger", 5],
    "target_pool": ["Most frequent words considered as target candidates.", "PositiveInteger", 50],
    "forbidden": ["Words never suggested as targets.", "WordList", []],
}
