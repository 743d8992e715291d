import random
rng = random.Random(20161)
pos_words = """good great excellent wonderful brilliant superb moving charming delightful touching
beautiful gorgeous stunning fantastic terrific amazing lovely enjoyable entertaining funny hilarious witty
clever smart engaging gripping thrilling compelling powerful memorable masterful inspired inventive fresh
original heartfelt warm tender sincere honest graceful elegant polished vivid rich layered nuanced subtle
poignant uplifting joyous exhilarating rousing spirited lively energetic sharp crisp confident assured
accomplished impressive remarkable extraordinary exceptional outstanding marvelous magnificent splendid
sublime transcendent luminous radiant dazzling breathtaking captivating enchanting absorbing riveting
satisfying rewarding refreshing delicious sweet playful breezy fun likable lovable endearing winning
affecting resonant thoughtful intelligent insightful perceptive wise mature sensitive generous humane
tight taut suspenseful stylish slick handsome lush atmospheric evocative haunting hypnotic dreamy magical
wondrous triumphant solid sturdy reliable admirable commendable praiseworthy classic timeless essential
loved enjoyed admired adored recommend treasure gem masterpiece triumph delight pleasure joy treat""".split()
neg_words = """bad awful terrible horrible dreadful boring dull tedious tiresome bland flat lifeless
stale tired clichéd predictable formulaic generic derivative shallow hollow empty pointless aimless
meandering sluggish slow plodding lumbering overlong bloated padded messy sloppy clumsy awkward
amateurish inept incompetent lazy careless muddled confused confusing incoherent baffling pretentious
smug self-indulgent overwrought melodramatic mawkish sappy saccharine cloying syrupy sentimental
manipulative cheap tacky trashy cheesy silly stupid dumb idiotic ridiculous absurd laughable ludicrous
preposterous implausible contrived forced strained labored unfunny humorless joyless grim dreary bleak
depressing ugly unpleasant annoying irritating grating obnoxious insufferable unwatchable unbearable
painful excruciating mediocre forgettable disposable unremarkable uninspired lackluster tepid lukewarm
limp weak feeble thin flimsy misguided misjudged miscast wooden stiff stilted leaden ponderous turgid
monotonous repetitive numbing exhausting draining disappointing disappointment failure mess disaster
waste flop hated loathed regret avoid bore chore slog dud""".split()
nouns = """movie film story plot script cast acting performance director direction screenplay
dialogue ending beginning scene scenes characters character hero heroine villain soundtrack music score
camera cinematography editing pacing tone mood comedy drama thriller romance sequel remake premise
idea message theme visuals effects production picture feature narrative twist climax finale lead
actor actress ensemble role turn debut effort work craft vision style tale journey adventure""".split()
fillers = """the a an this that it its is was are were has had have with and but or of in on at
to for from by as about into through over after before while than then there here some
every most more much very quite rather really just also still even almost nearly simply
at times overall often sometimes never always""".split()
templates_extra = ["i", "we", "you", "audiences", "viewers", "critics", "everyone", "nobody"]
# Zipf-ish sampling weights so rare sentiment words only show up in larger samples
def zipf_weights(n, s=1.1):
    return [1.0 / (i + 1) ** s for i in range(n)]
rng.shuffle(pos_words); rng.shuffle(neg_words); rng.shuffle(nouns)
pw, nw, nounw = zipf_weights(len(pos_words)), zipf_weights(len(neg_words)), zipf_weights(len(nouns), 0.8)

def pick(words, w):
    return rng.choices(words, weights=w, k=1)[0]

def sentence(polarity):
    own, other = (pos_words, neg_words) if polarity == "pos" else (neg_words, pos_words)
    ownw, otherw = (pw, nw) if polarity == "pos" else (nw, pw)
    k = rng.randint(1, 3)
    senti = []
    for _ in range(k):
        if rng.random() < 0.72:
            senti.append(pick(own, ownw))
        else:
            senti.append(pick(other, otherw))
    parts = []
    for s in senti:
        form = rng.random()
        noun = pick(nouns, nounw)
        if form < 0.35:
            parts.append(f"the {noun} is {rng.choice(['', 'very ', 'quite ', 'rather ', 'really '])}{s}")
        elif form < 0.6:
            parts.append(f"{rng.choice(['a', 'an', 'one'])} {s} {noun}")
        elif form < 0.8:
            parts.append(f"{rng.choice(templates_extra)} found the {noun} {s}")
        else:
            parts.append(f"{s} {rng.choice(fillers)} {noun}")
    # neutral padding
    for _ in range(rng.randint(0, 4)):
        parts.insert(rng.randint(0, len(parts)), " ".join(rng.choice(fillers) for _ in range(rng.randint(1, 3))) + " " + pick(nouns, nounw))
    text = ", ".join(parts)
    text = text[0].upper() + text[1:] + rng.choice([".", ".", "!", "..."])
    return text

for pol in ("pos", "neg"):
    with open(f"/root/crate/crates/core/data/fixture/{pol}.txt", "w", encoding="utf-8", newline="\n") as f:
        for _ in range(3000):
            f.write(sentence(pol) + "\n")
