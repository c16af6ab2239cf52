// Copyright 2026 The CapQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lexicon_data.h"

namespace capqa::lexdata {

const WordSet& Determiners() {
  static const WordSet* words = new WordSet{
      "a", "an", "the", "this", "that", "these", "those", "some", "another",
      "each", "every", "any", "no", "several", "many", "few", "all", "both",
      "his", "her", "its", "their", "my", "your", "our", "multiple", "various",
      "numerous", "other"};
  return *words;
}

const WordSet& PossessiveDeterminers() {
  static const WordSet* words =
      new WordSet{"his", "her", "its", "their", "my", "your", "our"};
  return *words;
}

const WordSet& Pronouns() {
  static const WordSet* words = new WordSet{
      "he",      "she",     "it",       "they",      "him",      "them",
      "we",      "us",      "i",        "me",        "you",      "someone",
      "something", "somebody", "anyone", "anything", "everyone", "everything",
      "nobody",  "nothing", "who",      "what",      "which",    "whom",
      "whose",   "there",   "himself",  "herself",   "itself",   "themselves",
      "one",     "where",   "when",     "why",       "how",      "hers",
      "theirs"};
  return *words;
}

const WordSet& Prepositions() {
  static const WordSet* words = new WordSet{
      "in",      "on",      "at",      "by",      "with",    "of",
      "for",     "from",    "to",      "into",    "onto",    "under",
      "over",    "near",    "behind",  "beside",  "besides", "between",
      "above",   "below",   "outside", "inside",  "within",  "through",
      "across",  "along",   "around",  "up",      "down",    "off",
      "out",     "against", "during",  "toward",  "towards", "next",
      "atop",    "beneath", "underneath", "past", "like",    "about",
      "among",   "upon",    "alongside", "amongst", "beyond", "throughout",
      "via",     "without", "despite", "after",   "before",  "while",
      "as",      "than",    "away"};
  return *words;
}

const WordSet& Particles() {
  static const WordSet* words =
      new WordSet{"up", "down", "out", "off", "away", "back"};
  return *words;
}

const WordSet& Auxiliaries() {
  static const WordSet* words = new WordSet{
      "is",     "are",    "was",   "were",  "am",    "be",    "been",
      "being",  "do",     "does",  "did",   "can",   "could", "will",
      "would",  "shall",  "should", "may",  "might", "must",  "'s",
      "'re",    "'m"};
  return *words;
}

const WordSet& Modals() {
  static const WordSet* words =
      new WordSet{"can",   "could", "will", "would", "shall", "should",
                  "may",   "might", "must", "do",    "does",  "did"};
  return *words;
}

const WordSet& Conjunctions() {
  static const WordSet* words =
      new WordSet{"and", "or", "but", "nor", "yet", "so", "while", "whilst",
                  "because", "although", "though", "whereas", "if", "&"};
  return *words;
}

const WordSet& Adverbs() {
  static const WordSet* words = new WordSet{
      "very",     "almost",    "close",     "together", "here",
      "just",     "also",      "still",     "nearly",   "quite",
      "too",      "rather",    "really",    "mostly",   "partially",
      "not",      "n't",       "never",     "always",   "often",
      "sometimes", "again",    "already",   "else",     "even",
      "only",     "then",      "now",       "well",     "far",
      "almost",   "somewhat",  "upside",    "inside-out", "nearby",
      "outdoors", "indoors",   "overhead",  "ahead",    "apart",
      "aside",    "alone",     "closely",
      "fast",     "instead",   "once",      "twice",    "barely"};
  return *words;
}

const WordSet& Adjectives() {
  static const WordSet* words = new WordSet{
      "young",    "old",       "large",     "big",       "small",
      "little",   "tiny",      "huge",      "giant",     "empty",
      "open",     "closed",    "tall",      "short",     "long",
      "full",     "wooden",    "metal",     "plastic",   "glass",
      "new",      "dirty",     "clean",     "wet",       "dry",
      "hot",      "cold",      "warm",      "cloudy",    "sunny",
      "snowy",    "grassy",    "sandy",     "rocky",     "busy",
      "crowded",  "various",   "different", "same",      "other",
      "several",  "many",      "few",       "baby",      "adult",
      "elderly",  "happy",     "sad",       "pretty",    "beautiful",
      "cute",     "fancy",     "nice",      "good",      "bad",
      "great",    "high",      "low",       "wide",      "narrow",
      "thick",    "thin",      "fat",       "heavy",     "light",
      "dark",     "bright",    "fresh",     "ripe",      "raw",
      "cooked",   "frozen",    "fried",     "grilled",   "stuffed",
      "sliced",   "chopped",   "half",      "whole",     "single",
      "double",   "modern",    "ancient",   "vintage",   "antique",
      "electric", "electronic", "digital",  "professional", "public",
      "private",  "local",     "main",      "top",       "bottom",
      "front",    "rear",      "upper",     "lower",     "middle",
      "left",     "right",     "far",       "near",      "next",
      "first",    "second",    "third",     "last",      "lone",
      "lonely",   "lovely",    "friendly",  "ugly",      "curly",
      "fluffy",   "furry",     "shiny",     "soft",      "hard",
      "smooth",   "rough",     "flat",      "round",     "square",
      "outdoor",   "indoor",    "male",      "female",
      "asian",    "african",   "american",  "wild",      "stuffed",
      "colorful", "striped",   "spotted",   "checkered", "plaid",
      "steep",    "calm",      "still",     "quiet",     "loud",
      "strange",  "unusual",   "odd",       "real",      "fake",
      "busy",     "safe",      "shallow",   "deep",      "vacant",
      "leafy",    "lush",      "bare",      "dead",      "alive",
      "asleep",   "awake",     "ready",     "able",      "healthy",
      "delicious", "tasty",    "homemade",  "traditional", "typical",
      "clear",    "blank",     "partly",    "skinny",    "muddy",
      "dusty",    "rainy",     "foggy",     "stormy",    "windy",
      "icy",      "hilly",     "dense",     "sparse",    "numerous",
      "multiple", "extra",     "giant",     "miniature", "toy"};
  return *words;
}

const WordSet& Verbs() {
  static const WordSet* words = new WordSet{
      // Base forms that are rarely nouns in captions.
      "sit", "stand", "hold", "eat", "sleep", "wear", "carry", "throw",
      "catch", "graze", "lean", "prepare", "contain", "hang", "drive", "ride",
      "lay", "lie", "fly", "swim", "hit", "kick", "jump", "see", "seem",
      "appear", "get", "go", "take", "make", "give", "put", "sits", "stands",
      "holds", "eats", "sleeps", "wears", "carries", "throws", "catches",
      "grazes", "leans", "prepares", "contains", "hangs", "drives", "rides",
      "lays", "lies", "flies", "swims", "hits", "kicks", "jumps", "sees",
      "seems", "appears", "gets", "goes", "takes", "makes", "gives", "puts",
      "plays", "walks", "runs", "looks", "waits", "talks", "uses", "reads",
      "poses", "smiles", "cuts", "crosses", "travels", "watches", "has",
      "have", "had", "shows", "pulls", "pushes", "sets", "rests", "stares",
      "drinks", "brushes", "feeds", "chases", "fills", "covers", "surrounds",
      "waves", "grabs", "climbs", "skis", "surfs", "skates", "swings",
      "points", "lands", "parks", "heads", "passes", "comes", "leads",
      "displays", "features", "serves", "sells", "tops", "faces", "overlooks",
      "set", "let", "hurt", "spread", "cut", "rest",
      // Irregular past forms.
      "sat", "stood", "held", "ate", "slept", "wore", "carried", "threw",
      "caught", "hung", "drove", "rode", "laid", "lay", "flew", "swam",
      "saw", "went", "took", "made", "gave", "got", "ran", "came", "began",
      "fell", "left", "brought", "bought", "kept", "sold", "told", "found",
      "led"};
  return *words;
}

const WordSet& IrregularParticiples() {
  static const WordSet* words = new WordSet{
      "worn",   "drawn",  "taken",  "shown",   "seen",    "made",
      "built",  "hung",   "ridden", "eaten",   "thrown",  "given",
      "written", "driven", "grown", "frozen",  "stuck",   "caught",
      "flown",  "lit",    "laid",   "lain",    "fallen",  "broken",
      "chosen", "sold",   "bought", "brought", "kept",    "held",
      "sat",    "stood",  "set",    "put",     "cut",     "spread",
      "shot",   "done",   "gone",   "begun",   "hidden",  "torn",
      "woven",  "sewn",   "swept",  "slept",   "fed",     "led",
      "left",   "split",  "shut",   "hit",     "known"};
  return *words;
}

const WordSet& IngNouns() {
  static const WordSet* words = new WordSet{
      "building", "ceiling",  "clothing", "king",      "ring",     "thing",
      "something", "nothing", "anything", "everything", "morning", "evening",
      "string",   "wing",     "swing",    "sibling",   "spring",   "icing",
      "frosting", "topping",  "stuffing", "railing",   "painting", "drawing",
      "sling",    "pudding",  "dumpling", "wedding",   "bedding",  "sing",
      "housing",  "awning",   "crossing", "parking",   "lighting", "ping",
      "sting",    "duckling", "seedling", "earring",   "stocking", "dressing",
      "filling",  "seating",  "siding",   "landing",   "opening",  "offering",
      "shopping", "sibling",  "ceiling",  "dining",    "living",   "skiing",
      "surfing",  "boxing",   "fencing",  "bowling",   "camping",  "fishing",
      "sailing",  "skating",  "snowboarding", "skateboarding", "bring",
      "pudding",  "wring",    "bling",    "outing",    "pairing",  "setting",
      "ending",   "beginning", "meeting", "clearing",  "pring",    "herring"};
  return *words;
}

const WordSet& EdNouns() {
  static const WordSet* words = new WordSet{
      "bed",   "red",    "shed",   "sled",  "seed",   "weed",   "feed",
      "speed", "need",   "steed",  "reed",  "breed",  "bread", "head",
      "thread", "sled",  "flatbed", "hundred", "bed",   "embed",  "greed",
      "shred", "hatred", "kindred", "sacred", "naked",  "wicked", "ragged",
      "rugged", "crooked", "tweed",  "deed", "creed",   "bled",   "fled",
      "wed",   "ted",    "ned",    "fred",  "jared",  "mohammed", "bobsled",
      "sofabed", "seabed", "riverbed", "hotbed", "roadbed", "truckbed"};
  return *words;
}

const WordSet& LyNouns() {
  static const WordSet* words = new WordSet{
      "family", "fly", "jelly", "belly", "lily", "rally", "bully", "holly",
      "tally", "ally", "butterfly", "dragonfly", "firefly", "housefly",
      "trolly", "gully", "italy", "july", "assembly", "supply", "reply",
      "dolly", "folly", "sally", "polly", "molly", "kelly", "billy", "willy",
      "only", "early", "daily", "lonely", "lovely", "friendly", "ugly",
      "curly", "holy", "silly", "hilly", "chilly", "oily", "woolly", "wooly",
      "jolly", "smelly", "elderly", "likely", "lively", "costly", "deadly",
      "partly"};
  return *words;
}

const WordSet& RelationalNouns() {
  static const WordSet* words = new WordSet{
      "front", "top", "side", "middle", "back", "edge", "left", "right",
      "center", "centre", "bottom", "corner", "end", "rest", "lot", "couple",
      "bunch", "group", "pair", "set", "piece", "slice", "view", "picture",
      "photo", "image", "shot", "close-up", "closeup", "kind", "type", "number",
      "variety", "assortment", "bit", "half", "part", "line", "row", "stack",
      "pile", "herd", "flock", "team", "crowd", "array", "collection"};
  return *words;
}

const WordSet& NonPluralS() {
  static const WordSet* words = new WordSet{
      "bus",   "gas",    "glass",  "grass",   "dress",  "cross",  "boss",
      "class", "moss",   "chess",  "mess",    "press",  "tennis", "bass",
      "canvas", "cactus", "octopus", "circus", "campus", "bonus", "virus",
      "lens",  "news",   "pants",  "jeans",   "shorts", "series", "species",
      "scissors", "glasses", "goggles", "clothes", "stairs", "this", "his",
      "is",    "was",    "has",    "yes",     "us",     "plus",   "atlas",
      "iris",  "axis",   "oasis",  "analysis", "christmas", "texas", "paris",
      "always", "perhaps", "hummus", "asparagus", "hibiscus", "walrus",
      "platypus", "citrus", "bonus", "status", "apparatus", "abacus",
      "surplus", "compass", "mattress", "harness", "fortress", "princess",
      "goddess", "business", "wilderness", "address", "express", "bus",
      "trellis", "chassis", "kiss", "mass", "pass", "brass", "floss",
      "lettuce"};
  return *words;
}

const std::unordered_map<std::string, std::string>& IrregularPlurals() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"men", "man"},       {"women", "woman"},     {"children", "child"},
      {"people", "person"}, {"feet", "foot"},       {"teeth", "tooth"},
      {"mice", "mouse"},    {"geese", "goose"},     {"oxen", "ox"},
      {"knives", "knife"},  {"leaves", "leaf"},     {"shelves", "shelf"},
      {"wolves", "wolf"},   {"loaves", "loaf"},     {"halves", "half"},
      {"calves", "calf"},   {"scarves", "scarf"},   {"wives", "wife"},
      {"lives", "life"},    {"thieves", "thief"},   {"elves", "elf"},
      {"sheep", "sheep"},   {"fish", "fish"},       {"deer", "deer"},
      {"tomatoes", "tomato"}, {"potatoes", "potato"}, {"heroes", "hero"},
      {"mangoes", "mango"}, {"buses", "bus"},       {"cacti", "cactus"},
      {"policemen", "policeman"}, {"firemen", "fireman"},
      {"businessmen", "businessman"}, {"gentlemen", "gentleman"},
      {"fishermen", "fisherman"}, {"dice", "die"}, {"skis", "ski"},
      {"taxis", "taxi"}, {"kiwis", "kiwi"},
      {"cookies", "cookie"}, {"movies", "movie"}, {"brownies", "brownie"},
      {"zombies", "zombie"}, {"goalies", "goalie"}, {"selfies", "selfie"},
      {"hoodies", "hoodie"}, {"ties", "tie"}, {"pies", "pie"},
      {"shoes", "shoe"}, {"toes", "toe"}};
  return *table;
}

const std::unordered_map<std::string, std::string>& IrregularVerbForms() {
  static const auto* table = new std::unordered_map<std::string, std::string>{
      {"has", "have"}, {"does", "do"}, {"goes", "go"}, {"is", "be"},
      {"flies", "fly"}, {"lies", "lie"}, {"ties", "tie"}, {"dies", "die"},
      {"skis", "ski"}};
  return *table;
}

std::vector<std::string> DefaultColors() {
  return {"red",    "orange", "yellow",   "green",  "blue",     "purple",
          "pink",   "brown",  "black",    "white",  "gray",     "grey",
          "silver", "gold",   "golden",   "beige",  "tan",      "maroon",
          "navy",   "teal",   "turquoise", "violet", "magenta", "cyan",
          "ivory",  "cream",  "crimson",  "olive",  "lavender", "khaki"};
}

std::vector<std::string> DefaultLocations() {
  return {
      // Outdoor scenes.
      "field", "park", "city", "street", "road", "highway", "sidewalk",
      "yard", "backyard", "beach", "ocean", "sea", "lake", "river", "pond",
      "water", "sky", "air", "snow", "grass", "forest", "woods", "jungle",
      "mountain", "mountains", "hill", "hills", "desert", "valley", "meadow",
      "pasture", "farm", "garden", "orchard", "countryside", "town",
      "village", "downtown", "neighborhood", "intersection", "alley",
      "plaza", "square", "courtyard", "lot", "parking", "harbor", "harbour",
      "marina", "dock", "port", "bay", "shore", "coast", "island", "surf",
      "waves", "sand", "dirt", "mud", "rain", "fog", "distance",
      "background", "foreground", "wild", "wilderness", "savanna", "savannah",
      "zoo", "enclosure", "pen", "corral", "stable", "barn", "ranch",
      "campground", "trail", "path", "track", "tracks", "runway", "tarmac",
      "airport", "station", "terminal", "platform", "stadium", "arena",
      "court", "pitch", "rink", "slope", "slopes", "pool", "playground",
      "cemetery", "market", "marketplace", "crowd", "traffic", "area",
      "outdoors", "rainforest", "canyon", "cliff", "cave", "creek", "stream",
      // Rooms and buildings.
      "room", "kitchen", "bathroom", "bedroom", "restaurant", "office",
      "store", "shop", "cafe", "cafeteria", "diner", "bakery", "bar", "pub",
      "house", "home", "building", "hotel", "hospital", "school", "classroom",
      "library", "museum", "church", "hall", "hallway", "lobby", "garage",
      "basement", "attic", "closet", "studio", "gym", "warehouse", "factory",
      "apartment", "porch", "balcony", "patio", "deck", "tent", "cabin",
      "shed", "greenhouse", "mall", "supermarket", "airplane", "plane",
      "bus", "train", "car", "truck", "boat", "ship", "vehicle", "taxi",
      "cockpit",
      // Containers.
      "bowl", "plate", "box", "basket", "bag", "cup", "mug", "jar", "bottle",
      "vase", "pot", "pan", "tray", "bucket", "bin", "container", "crate",
      "cage", "sink", "bathtub", "tub", "toilet", "oven", "microwave",
      "refrigerator", "fridge", "drawer", "cabinet", "suitcase", "luggage",
      "backpack", "purse", "pocket", "wallet", "envelope", "carton",
      "package", "dish", "glass", "pitcher", "kettle", "skillet", "wok",
      "cooler", "trunk", "stroller", "cart", "wagon", "wheelbarrow",
      "nest", "hand", "hands", "mouth", "arms", "lap", "bed", "crib",
      "water", "blanket", "sandwich", "bun", "wrapper", "foil"};
}

std::vector<std::pair<std::string, std::string>> DefaultAntonyms() {
  return {{"big", "small"},    {"small", "big"},     {"large", "small"},
          {"little", "big"},   {"tall", "short"},    {"short", "tall"},
          {"long", "short"},   {"old", "young"},     {"young", "old"},
          {"new", "old"},      {"open", "closed"},   {"closed", "open"},
          {"empty", "full"},   {"full", "empty"},    {"hot", "cold"},
          {"cold", "hot"},     {"wet", "dry"},       {"dry", "wet"},
          {"clean", "dirty"},  {"dirty", "clean"},   {"dark", "bright"},
          {"bright", "dark"},  {"thick", "thin"},    {"thin", "thick"},
          {"heavy", "light"},  {"wide", "narrow"},   {"narrow", "wide"},
          {"high", "low"},     {"low", "high"},      {"happy", "sad"},
          {"sad", "happy"},    {"soft", "hard"},     {"hard", "soft"},
          {"busy", "empty"},   {"crowded", "empty"}, {"sunny", "cloudy"},
          {"cloudy", "sunny"}, {"indoor", "outdoor"}, {"outdoor", "indoor"},
          {"male", "female"},  {"female", "male"},   {"up", "down"},
          {"down", "up"},      {"left", "right"},    {"right", "left"},
          {"front", "back"},   {"top", "bottom"},    {"bottom", "top"}};
}

std::vector<std::string> DefaultPersons() {
  return {"man",      "woman",    "person",   "people",   "boy",
          "girl",     "child",    "kid",      "baby",     "toddler",
          "player",   "guy",      "lady",     "gentleman", "men",
          "women",    "children", "adult",    "teenager", "teen",
          "student",  "chef",     "cook",     "worker",   "skier",
          "surfer",   "skateboarder", "snowboarder", "rider", "biker",
          "cyclist",  "driver",   "pilot",    "officer",  "policeman",
          "fireman",  "soldier",  "farmer",   "vendor",   "customer",
          "crowd",    "couple",   "family",   "friend",   "mother",
          "father",   "mom",      "dad",      "son",      "daughter",
          "brother",  "sister",   "bride",    "groom",    "pitcher",
          "batter",   "catcher",  "umpire",   "athlete",  "tourist",
          "passenger", "businessman", "fisherman", "someone", "somebody",
          "individual", "youngster", "infant", "grandmother", "grandfather",
          "doctor",   "nurse",    "waiter",   "waitress", "team",
          "jockey",   "cowboy",   "performer", "musician", "spectator"};
}

std::vector<std::string> DefaultAnimals() {
  return {"dog",      "cat",      "horse",    "cow",      "sheep",
          "bird",     "elephant", "giraffe",  "zebra",    "bear",
          "puppy",    "kitten",   "pony",     "lamb",     "goat",
          "pig",      "duck",     "goose",    "chicken",  "pigeon",
          "seagull",  "gull",     "parrot",   "owl",      "eagle",
          "hawk",     "swan",     "fish",     "monkey",   "lion",
          "tiger",    "deer",     "bull",     "calf",     "donkey",
          "mouse",    "rabbit",   "bunny",    "squirrel", "animal",
          "pet",      "teddy",    "cattle",   "ox",       "camel",
          "kangaroo", "rhino",    "hippo",    "turtle",   "frog",
          "snake",    "butterfly", "bee",     "polar",    "crow"};
}

}  // namespace capqa::lexdata
