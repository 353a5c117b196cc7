#!/usr/bin/env python3
"""Regenerates data/dale_easy_words.txt and data/english_words.txt.

The easy list approximates the classic familiar-words list used by the
Dale-Chall readability formula: everyday base-form words a young reader
knows. The English list is the easy list plus a broader educated vocabulary,
expanded with regular inflections, and backs the spelling-error metric.

Both outputs are sorted, lowercase, one word per line, and committed to the
repository; rerun this script only when editing the vocabularies below.
"""

import pathlib

EASY = """
a able about above across act add afraid after afternoon again against age ago agree air all almost
alone along already also always am among an and angry animal another answer any anybody anyone
anything appear apple april arm around arrive art as ask asleep at ate attention aunt august autumn
awake away baby back bad bag bake ball balloon banana band bank bark barn base baseball basket bat
bath be beach bean bear beat beautiful became because become bed bee been before began begin behind
being believe bell belong below belt bench bend bent beside best better between big bike bill bird
birthday bit bite black blanket blew blind block blood blow blue board boat body bone book boot
born borrow both bottle bottom bought bowl box boy branch brave bread break breakfast breath brick
bridge bright bring broke brother brought brown brush bubble bucket bug build bump burn bus busy but
butter button buy by cabin cage cake call came camp can candle candy cap car card care careful
carrot carry cart case cat catch cattle caught cause cave cent center chain chair chalk chance
change chase cheap check cheek cheese cherry chest chew chicken chief child children chin choose
chose church circle circus city clap class clean clear climb clock close cloth clothes cloud clown
club coal coat cold collect color comb come company cook cool copy corn corner correct cost cotton
could count country course cover cow crack crayon cream creek cried crop cross crowd cry cup curl
cut cute dad daily dance danger dark dash date daughter day dead dear december decide deep deer
desk did die different dig dime dinner dirt dirty dish do doctor does dog doll dollar done door
double down dozen drag draw dream dress drew drink drive drop drove dry duck dug during dust each
ear early earn earth east easy eat edge egg eight either elephant else empty end enemy enjoy enough
enter even evening ever every everybody everyone everything exact except excited eye face fact fair
fall family fan far farm farmer fast fat father fault favor fear feed feel feet fell felt fence few
field fight fill find fine finger finish fire first fish fit five fix flag flat flew floor flower
fly fog fold follow food foot for forest forget forgot fork form fort found four fox free fresh
friend frog from front fruit full fun funny fur game garden gate gave get giant gift girl give
glad glass go goat goes going gold gone good got grab grade grand grandfather grandmother grape
grass gray great green grew grin ground group grow guess had hair half hall hand handle hang happen
happy hard has hat hate have he head hear heard heart heat heavy held hello help hen her here hers
herself hid hide high hill him himself his hit hold hole holiday home honey hop hope horn horse hot
hour house how hug huge hundred hung hungry hunt hurry hurt i ice idea if important in inch indeed
inside instead into iron is it its itself jacket january jar job join joke joy juice jump june july
just keep kept key kick kid kind king kiss kitchen kite kitten knee knew knife knock know lady lake
lamp land large last late laugh lay lazy lead leaf learn least leave left leg lemon less let letter
lick lid lie life lift light like line lion lip list listen little live load loaf lock log lone
long look lose lost lot loud love low luck lucky lunch mad made mail make man many map march mark
market match matter may maybe me meal mean meant meat meet melt men mess met middle might mile milk
mind mine minute miss mister mix mom moment money monkey month moon more morning most mother
mountain mouse mouth move much mud music must my myself nail name nap near neck need needle nest
never new next nice nickel night nine no nobody nod noise none noon north nose not note nothing
november now number nurse nut oak ocean october of off offer often oh oil old on once one only
onto open or orange order other our out outside oven over owl own page paid pail paint pair pan
pants paper parade parent park part party pass past paste pat path paw pay pea peach peanut pear
pen pencil penny people pet pick picnic picture pie piece pig pile pin pine pink place plan plane
plant plate play please plenty plow pocket point poke pole pond pony poor pop porch pot potato
pound pour practice present press pretty prize promise proud pull puppy push put puzzle queen
question quick quiet quit quite rabbit race rag rain raise ran ranch rang reach read ready real
red remember rest ride right ring ripe rise river road rock rode roll roof room rope rose round
row rub rug rule run rush sad saddle safe said sail salt same sand sang sat save saw say school
sea season seat second secret see seed seem seen sell send sent september set seven several sew
shake shall shape share sharp she sheep shell shine ship shirt shoe shone shook shoot shop short
shot should shoulder shout show shut sick side sight sign silly silver simple since sing sister
sit six size skate skin skip sky sled sleep slid slide slow small smart smell smile smoke snap
snow so soap sock soft sold some somebody someone something sometimes son song soon sore sorry
sound soup south space speak spell spend spent spill spin splash spoke spoon sport spot spread
spring square squirrel stand star start state stay step stick still sting stir stone stood stop
store storm story stove straight strange street string strong such sudden sugar suit summer sun
supper sure swam sweet swim swing table tail take talk tall tap taste teach teacher team tear
teeth tell ten tent than thank that the their them then there these they thick thin thing think
third this those though thought three threw through throw thumb tie tiger tight time tiny tip
tire tired to today toe together told tomorrow tone tongue tonight too took tooth top touch
toward towel town toy track trade train trap tree trick trip truck true trunk try turn twelve
twenty twice two ugly uncle under understand until up upon us use usual valley very visit voice
wag wagon wait wake walk wall want war warm was wash watch water wave way we wear weather week
well went were west wet what wheel when where which while whisper white who whole why wide wife
wild will win wind window wing winter wipe wise wish with without woke woman women won wonder wood
word wore work world worm worry would wrap write wrong yard year yellow yes yesterday yet you
young your yourself zoo
always anybody anywhere bedroom blackboard cowboy daytime doghouse downstairs everywhere
fireplace footprint grandma grandpa haircut hideout homework inside mailbox maybe outside
pancake playground raincoat sandbox snowball somewhere sunshine upstairs
ant bear beaver bee bird bug bunny calf camel chick chipmunk cow crow deer dove duckling eagle
fox goose hawk hog kitten lamb mole moose mouse mule owl ox pig pony puppy raccoon robin rooster
seal shark sheep skunk snail snake spider squirrel turkey turtle whale wolf worm
apron basket bead bib bonnet boot bow button cape cloak collar dress glove hat hood jacket mitten
overalls pajamas pocket ribbon scarf shirt shoe skirt sleeve slipper sock stocking sweater
accident ache acorn acre add address admire adventure afar afterward airplane airport alike alley
alligator allow almond alphabet american amuse anchor angel anger ankle anthill anyhow anyway
apartment apiece applesauce apricot apron arch arithmetic armful army arrow ash ashore attic
automobile avenue awhile ax badge bakery bald bale bamboo bandage banjo barber bare barefoot
barrel basement bash bat bathe bathtub bay beard becoming bedtime beech beefsteak beehive beg
beggar begun behave behold being bellow belly beneath berry bib bicycle billboard bin bingo birch
birdhouse biscuit blackberry blackbird blacksmith blame blast blaze bleed bless blessing blizzard
bloom blossom blot blouse bluebird blueberry blush boast bobwhite boil bold bonfire boom born
bossy bounce bouquet bowwow boxcar boxer bracelet brain brake bran brass bravery breast breeze
bribe bridle briefcase brighten brim bristle broadcast bronco broom brownie bruise brook bud
budge buffalo buggy bugle bulb bull bulldog bullet bumblebee bun bunch bundle bunk burro burst
bury bushel buttercup butterfly buttermilk butterscotch buzz buzzard cabbage cackle cactus cafe
calendar calm camera campfire canal canary candlestick cane cannon canoe canyon capital captain
caramel cardboard carefree careless cargo carload carpenter carpet cart carve castle catbird
caterpillar catfish catsup cedar ceiling celery cellar cereal chatter champion charm chart chase
cheat checkers cheerful chestnut chilly chimney china chip chirp chocolate chop chorus christen
chuckle churn cider cinder cinnamon clang clank claw clay cleaner cliff clip cluck clump coach
coast cobbler cobweb cocoa coconut cocoon codfish coffee coffeepot coin collar college comfort
comic company compass cone connect coop copper cord cork cornbread corncob cornfield cornmeal
cottage couch cough counter courthouse cowardly crab cradle cramp cranberry crank crash crawl
crazy creak creamy credit creep crib cricket croak crook crooked crow crumb crumble crush crust
cub cuff cupboard cupful cure curtain curve cushion customer dab dairy daisy dam damage damp
dandy dangerous dare darkness darling darn dart daybreak daytime dazzle deaf deal death decorate
den dentist depend deposit describe desert dessert devil dewdrop diamond dice dime dimple dine
dip direct disease dishpan ditch dive divide dock dodge doe dollhouse donkey doorbell doorknob
doorstep dope dot doughnut dove drain drank dresser dressmaker dribble drift drill drip drown
drowsy drum drunk dude dumb dump dusty dwarf dye eager earache eastern echo elbow elder elevator
elm engine engineer enjoyment envelope equal erase errand escape eve everyday examine excuse exit
expect explain fade faint fairy faith fake false fame fancy fare farmyard fashion fasten faucet
feast feather fib fiddle fifth fifty film finich firearm firecracker firefly fireman fireworks
fisherman fishpond fist fits flake flame flap flare flash flashlight flea flesh flick flight
flip flock flood flop flour flutter foam foggy folk fond footprint forehead forenoon forfeit
forth fortune forty fountain fourteen fourth fowl frame freckle freckles freedom freeze freight
fret frighten fringe frost frosting frown froze fry fudge fume furnace fuss fuzzy gaily gallon
gallop gang garage garbage gasp gaze geese general gentleman geography gingerbread giraffe glance
gleam glide glitter globe gloomy glory glow glue gobble godmother goldfish golf goodbye
gooseberry govern gown gracious grain grandchild grandson grapefruit grapevine gravel graveyard
gravy graze grease greet grind groan grocery grove grownup grumble grunt guard guest gulf gum
gunpowder guy gym haircut hairpin halt ham hammer handful handkerchief handsome handwriting hanger
harbor hardship hardware harm harness harp harvest haste hasten hatch hatchet haul hay hayfield
haystack headache healthy heap heaven hedge heel hidden highway hike hint hip hire hiss hitch
hive hoe hog hollow holy homesick honest honeybee honeymoon hood hoof hook hoop hopeful hopeless
horseback horseshoe hose hospital hotel hound hourly housetop howl humble hump hunger hunk hunter
hurrah hush hut hymn icebox icing idle important impossible improve inchworm income indoors ink
inn innocent insect instant insult intend invite itch ivory ivy jab jag jail jam jaw jay jelly
jellyfish jerk jig jingle jockey jog joking jolly journey jug juggle juicy jungle junk kettle
kindness kingdom knit knob knot lace ladder lard lash lasso laundry lawful lawn laziness leader
leak lean leap leather ledge leftover lemonade lettuce liberty librarian lighthouse lightness
lightning likely lime limp linen liver lively lizard loan lobster locket locomotive lodge
lonesome lookout loop loose lord lowly lullaby lumber lump macaroni machinery madam magic
magician mailbox mailman mama mane manger maple marble mare mask mast mat mattress meadow
meanness measure meek mellow melody mend meow merry midnight mighty mill miller million miner
mint mistake misty mitt moan moccasin mock mold mound mount mourn mow muddy mug mulberry mumps
mushroom mustard mutt mutter muzzle nag nail nap napkin naughty navy nearby neat necklace necktie
needy nephew nibble nicely niece nightgown nineteen ninety noble nod noisy nonsense noodle
northern nowhere nursery oatmeal obey ought outdoors outfit outlaw overnight owe owner pace pack
package pad padlock pal palace pane pansy papa parachute pardon partly partner pasture patch
pavement paws peaceful peck peek peel peep peg pelt pepper peppermint perfume perhaps pest pet
pickle pigeon piggy pigpen pillow pilot pimple pinch pineapple pint pirate pistol pit pitch
pitcher pity plaid plaster platter playmate plod plop plug plum plumber pocketbook polish polite
popcorn porch pork porridge postage postman pout powder praise prance pray preach precious
prepare pretend prick prince princess print prison prisoner promptly prop propeller protect
prune pudding puddle puff pump pumpkin punch punish pup pure purple purr purse quack quart
quarter quartz quietly quilt rack radio radish raft rail railway raisin rake rambling rank rap
rash rat rattle rattlesnake raven raw ray razor recess reindeer rejoice repair respect return
rhyme rib rice rich rid riddle rim rinse rip ripple roam roar roast robber robe rocket rocky
rooster rot rotten rough rowboat royal rubbed rubber rubbish ruby ruler rumble rung runt rust
sack saddle sadness safety sake salad sale salute sandwich sandy sap sash sassy satin sausage
savage scab scales scamper scarecrow scared scent schoolboy schoolhouse schoolmaster scorch
scrape scream screech screw scrub seashore seaweed seesaw selfish sense serious sermon settle
seventeen seventy shabby shack shady shaggy shaky shame shampoo shank shanty shave shear shed
shepherd shiver shock shoemaker shorten shovel shower shy sigh silence silk sill sincerely sip
sir sissy sixteen sixty skater sketch ski skillet slam slap slate slave sleepy sleet sleeve
slender slice slick slip slipper slippery slit sliver slump sly smack smash smooth smother snack
snare snarl sneak sneeze sniff snore snort snout snowflake snowman snug soak socket soda sofa
soggy soil sole solemn somersault soothe sour sow spade spank sparkle sparrow speck speckled
speechless spice spider spike spit spite sponge spook spool spout spray sprinkle spy squash
squeak squeeze squirt stable stack stagecoach stake stale stalk stall stallion stamp starfish
starve station steak steal steam steamboat steeple steer stepping stew stitch stocking stole
stoop stork stormy stout strap straw strawberry stream stretch stride strip stripe stroke stroll
stub stubborn stump stung subway suck suds suffer suitcase sulk sunburn sunflower sunnyside
sunrise sunset suppose swallow swamp swan swat sway swear sweat sweep swell swept swift swollen
swoop sword tablecloth tablespoon tack taffy tag tailor tame tan tangle tanner tar tardy tassel
tattle teakettle teaspoon tease telephone telegram temper tender tennis term terrible thankful
thaw theater thee thimble thirsty thirteen thirty thorn thread thrill throat throne thump
thunder ticket tickle timid tin tinkle toad toadstool toast tomato tommy toolbox tractor trail
tramp trap tray treasurer treasury tremble trial tribe trim trolley troop trot troubles truly
trust tub tulip tumble turnip tusk tutor twig twin twist tyrant unfair unfold unhappy unkind
unknown untie unwilling upset village vine violet wad waist waken walnut warmth wart wasteful
watchdog watchman waterfall watermelon waterproof wax wayside weak wealth weed weep western whack
wharf wheat whine whip whirl whisk whistle wicked wiggle willow windmill windy wink wolf wonderful
woodpecker wool workman worn worse worst wound wrap wreck wren wrench wring wrist yarn yearly
yell yolk yonder
"""

EXTRA_ENGLISH = """
ability absence absolute abstract academic accept access accident accompany accomplish according
account accurate achieve acid acknowledge acquire action active activity actual adapt addition
address adequate adjust administration admire admission admit adopt adult advance advantage
adventure advertise advice advise affair affect afford agency agenda agent aggressive agreement
agriculture ahead aid aim aircraft airline airport alarm album alcohol alert algorithm alive
allow ally alternative although aluminum amazing ambition amount analysis analyze ancient angle
anniversary announce annual anticipate anxiety apart apartment apology apparent appeal appearance
appetite application apply appoint appreciate approach appropriate approval approximate
architecture area argue argument arise arithmetic army arrange arrangement arrest arrival article
artist aspect assemble assess asset assign assist associate association assume assure athlete
atmosphere atom attach attack attempt attend attitude attract audience author authority automatic
available average avoid award aware awful awkward bachelor background bacteria balance ballot
bandage banner bargain barrel barrier basic basis battery battle beam behalf behave behavior
benefit beyond bicycle billion biology blame blanket blend boundary brain brand brief brilliant
broad broadcast budget bulletin burden bureau business cabinet calculate calendar camera campaign
campus canal cancel cancer candidate capable capacity capital captain capture carbon career
careless cargo carpenter carriage cartoon category cattle celebrate cell cellar cement ceremony
certain chain challenge chamber champion channel chapter character charge chart chemical
chemistry chocolate choice cinnamon circuit circumstance citizen civil claim classical classify
clause clerk client climate clinic code coast colleague collection college column combat
combination combine comfort command comment commerce commission commit committee common
communicate community compare comparison compete competition complain complete complex
complicate component compose composition compound comprehend computer concentrate concept concern
conclude conclusion concrete condition conduct conference confidence confirm conflict confuse
congress connect connection conscience conscious consequence consider consist constant construct
consult consume contact contain content contest context continue contract contrast contribute
control convenient convention conversation convert convince cooperate coordinate cope copper
correspond cottage cotton council counsel counter county couple courage court cousin create
creature credit crew crime crisis criteria critic critical criticism crucial cruel culture
curious current curriculum custom customer cycle damage data database deadline debate debt decade
decision declare decline decorate decrease defeat defend define definite definition degree delay
deliberate delicate deliver demand democracy demonstrate dentist deny department departure depend
deposit depression depth describe description desert deserve design desire despite destination
destroy detail detect detective determine develop development device devote diagram dictionary
diet differ difficult dignity dimension direct direction director disappear disappoint disaster
discipline discount discover discuss disease dismiss display dispute distance distant distinct
distinguish distribute district disturb divide division document domestic dominant dominate
donate double doubt draft drama dramatic drawer drought dull durable duty dynamic eager economic
economy edit edition editor educate education effect effective efficiency efficient effort
elaborate elastic elect election electric electricity electronic element eliminate embarrass
emerge emergency emotion emphasis emphasize empire employ employee employer enable encounter
encourage energy engage engine engineer enormous ensure enterprise entertain enthusiasm entire
entrance entry envelope environment episode equal equip equipment equivalent error escape
especially essay essential establish estate estimate ethnic evaluate event eventually evidence
evil evolve exam examine example exceed excellent exchange excite exclude excuse execute
executive exercise exhaust exhibit exist existence expand expect expense expensive experience
experiment expert explain explanation explore export expose express expression extend extension
extensive extent external extra extraordinary extreme fabric facility factor factory faculty
failure faith familiar famous fancy fantastic fashion fatal feature federal fee feedback fellow
female fiction figure final finance financial firm fiscal flavor flexible focus forecast foreign
formal format formula fortune forward foundation fraction fragment frame freedom frequency
frequent freshman fuel fulfill function fund fundamental funeral furniture further future gain
gallery gallon gap garage garbage gasoline gather gear gene general generate generation generous
gentle genuine gesture glance global glory glue goal govern government governor gradual graduate
grain grammar grant graph grateful gravity grocery guarantee guard guest guide guilty habit
handle harbor hardly harm harmony harvest hazard headline headquarters health heap heel height
helicopter hesitate highway hint hire historian historic history hobby hollow holy honest honor
horizon horror hospital host hotel household humble humor hunger hurricane hydrogen identical
identify identity ignore ill illegal illustrate image imagine immediate immigrant impact imply
import impose impress improve incident include income increase independent index indicate
individual industry infant infect inflation influence inform information ingredient initial
initiative injure injury inner innocent input inquiry insect insert insist inspect inspire
install instance instant institution instruction instrument insurance intellectual intelligence
intend intense intention interact interest internal international interpret interrupt interval
interview introduce invent invest investigate invite involve island issue item jealous journal
journey judge judgment junior jury justice justify keen kettle keyboard kingdom knowledge label
labor laboratory ladder language lantern launch lawyer layer league lecture legal legend
legislation leisure length lesson level liberal liberty library license limb limit liquid
literary literature local locate location logic loyal luggage lumber machine magazine magic
magnet maintain major majority male mall manage management manager manner manual manufacture
margin marine marriage mass master material mathematics matter mature maximum mayor meadow
meanwhile measure mechanic medal media medical medicine medium member membership memory mental
mention menu merchant mercy mere merit message metal method military million mineral minimum
minister minor minority miracle mirror mischief missile mission mistake mixture mobile mode model
moderate modern modest modify moisture molecule monitor monument mood moral motion motive motor
multiple multiply murder muscle museum mutual mystery narrative narrow nation native natural
nature navy necessary negative neglect negotiate neighbor neighborhood nephew nerve nervous
network neutral nevertheless newspaper niece noble normal notice notion novel nuclear nutrition
obey object objective obligation observe obstacle obtain obvious occasion occupy occur odd offend
offense official offspring operate operation operator opinion opponent opportunity oppose
opposite option oral orbit orchard ordinary organ organic organization organize origin original
outcome outline output overall overcome overlook oxygen pace package palace pale panel panic
parallel pardon participate particle particular partner passage passenger passion passive patent
patience patient pattern pause payment peace peculiar penalty pension percent perceive percentage
perfect perform performance perhaps period permanent permission permit person personal personnel
perspective persuade phase phenomenon philosophy phrase physical physician piano pioneer pitch
plastic platform pleasant pledge plot plunge poem poet poetry policy polish polite political
politics poll pollution popular population portion position positive possess possible post
potential poverty powder powerful practical praise precious precise predict prefer pregnant
prejudice premise preparation prepare presence preserve president pressure pretend prevent
previous price pride primary prime principal principle priority prison private privilege
probable problem procedure proceed process produce product profession professional professor
profile profit program progress prohibit project prominent promote prompt proof proper property
proportion proposal propose prospect protect protein protest prove provide province provision
public publication publish punish purchase pure purpose pursue qualify quality quantity quarter
quota quote rack radar radical radio rail railroad random range rank rapid rare rate rather
ratio rational raw reaction reality realize reason reasonable rebel recall receive recent
recipe recognize recommend record recover recruit reduce refer reference reflect reform refuse
regard region register regret regular regulate reject relate relation relationship relative
relax release relevant relief relieve religion religious rely remain remark remedy remote remove
render rent repair repeat replace reply report represent republic reputation request require
requirement rescue research resemble reserve resident resign resist resolution resolve resource
respect respond response responsible restore restrict result resume retail retain retire retreat
reveal revenue reverse review revise revolution reward rhythm rid ridge rifle rigid risk rival
role romance rough route routine royal rubber rude ruin rumor rural sacred sacrifice safety
salad salary sample sanction satellite satisfy sauce saucer scale scandal scarce scare scatter
scene schedule scheme scholar scholarship science scientific scientist scissors scope score
scratch screen script sculpture search section sector secure security seek seize seldom select
selection senate senator senior sense sensitive sentence separate sequence series serious servant
serve service session settle severe shade shadow shallow shame shelter sheriff shield shift
similar simple sincere site situation skill slender slight slogan smooth social society software
soil solar soldier solid solution solve somewhat sophisticated source souvenir spare spark
special species specific spectrum speech speed sphere spirit spite split sponsor stable stadium
staff stage stain stake standard staple stare statement station statistics status steady steel
steep stem stiff stimulate stock stomach strategy stress stretch strict strike structure struggle
student studio study stuff stupid style subject submit substance substitute subtle suburb succeed
success sufficient suggest suicide sum summary superior supply support suppose supreme surface
surgery surplus surprise surrender surround survey survive suspect suspend sustain swift switch
symbol sympathy symptom system tablet tackle tactic talent tank target task tax technical
technique technology telephone telescope television temperature temple temporary tend tendency
tension term terrible territory terror testify text texture theme theory therapy therefore thesis
thorough threat threaten thrive thus ticket timber tissue title tobacco tolerate tone topic total
tour tourist tournament trace tradition traffic tragedy trail transfer transform transit
translate transport travel treasure treat treatment treaty tremendous trend trial tribe tribute
trigger triumph troop trophy trouble tune tunnel tutor type typical ultimate unable uncertain
undergo undergraduate underlying uniform union unique unit unite unity universal universe
university unless unusual upper urban urge urgent usage useful usual utility vacation vacuum
vague valid value variable variation variety various vary vast vegetable vehicle venture verdict
verse version vertical vessel veteran victim victory video view village violence violent virtue
virus visible vision visual vital vitamin volume voluntary volunteer vote wage wander warn
warrant wealth weapon welfare welsh whatever whenever whereas wherever whether widow width
willing wisdom wit witness worth worthy wound wreck yield youth zone
law northern southern eastern territory territories diverse populate federal republic religion
christianity america achieve loss highly lowly weekly monthly daily unite united states
"""

IRREGULAR = """
am are be became become began begin bent bit bite blew blow broke broken brought build built
came catch caught children chose chosen come did do done drew drive driven drove eaten fell felt
fight flew fought found froze frozen gave given gone grew grown heard held hid hidden hit hung
kept knew known laid lain lay led lent lost made meant men met mice paid people ran rang ridden
rode rose sang sat saw seen sent shook shone shot slept slid sold spent spoke spoken stood stole
stolen swam swept swore sworn taken taught threw thrown told took tore torn went wept were woke
women won wore worn wrote written
"""


def words_of(block: str) -> list[str]:
    return sorted({w for w in block.split() if w})


def inflections(word: str) -> set[str]:
    out = {word}
    out.add(word + "s")
    if word.endswith(("s", "x", "z", "ch", "sh")):
        out.add(word + "es")
    if word.endswith("y") and len(word) > 2 and word[-2] not in "aeiou":
        stem = word[:-1]
        out.update({stem + "ies", stem + "ied"})
    if word.endswith("e"):
        out.update({word + "d", word[:-1] + "ing"})
    else:
        out.update({word + "ed", word + "ing"})
    # consonant doubling (set -> setting, run -> running)
    if (
        len(word) >= 3
        and word[-1] not in "aeiouwxy"
        and word[-2] in "aeiou"
        and word[-3] not in "aeiou"
    ):
        out.update({word + word[-1] + "ed", word + word[-1] + "ing"})
    return out


def main() -> None:
    data_dir = pathlib.Path(__file__).resolve().parents[2] / "data"
    data_dir.mkdir(exist_ok=True)

    easy = words_of(EASY)
    (data_dir / "dale_easy_words.txt").write_text("\n".join(easy) + "\n", encoding="utf-8")

    english: set[str] = set()
    for word in easy + words_of(EXTRA_ENGLISH):
        english.update(inflections(word))
    english.update(words_of(IRREGULAR))
    (data_dir / "english_words.txt").write_text(
        "\n".join(sorted(english)) + "\n", encoding="utf-8"
    )

    print(f"easy: {len(easy)} words; english: {len(english)} words")


if __name__ == "__main__":
    main()
