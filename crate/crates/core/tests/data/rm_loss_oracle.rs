// (gap, -ln sigmoid(gap)) evaluated at 60 significant digits with mpmath.
#[allow(clippy::excessive_precision, clippy::approx_constant)]
const RM_LOSS_ORACLE: [(f64, f64); 500] = [
    (-50.0, 50.0),
    (-49.75, 49.75),
    (-49.5, 49.5),
    (-49.25, 49.25),
    (-49.0, 49.0),
    (-48.75, 48.75),
    (-48.5, 48.5),
    (-48.25, 48.25),
    (-48.0, 48.0),
    (-47.75, 47.75),
    (-47.5, 47.5),
    (-47.25, 47.25),
    (-47.0, 47.0),
    (-46.75, 46.75),
    (-46.5, 46.5),
    (-46.25, 46.25),
    (-46.0, 46.0),
    (-45.75, 45.75),
    (-45.5, 45.5),
    (-45.25, 45.25),
    (-45.0, 45.0),
    (-44.75, 44.75),
    (-44.5, 44.5),
    (-44.25, 44.25),
    (-44.0, 44.0),
    (-43.75, 43.75),
    (-43.5, 43.5),
    (-43.25, 43.25),
    (-43.0, 43.0),
    (-42.75, 42.75),
    (-42.5, 42.5),
    (-42.25, 42.25),
    (-42.0, 42.000000000000000001),
    (-41.75, 41.750000000000000001),
    (-41.5, 41.500000000000000001),
    (-41.25, 41.250000000000000001),
    (-41.0, 41.000000000000000002),
    (-40.75, 40.750000000000000002),
    (-40.5, 40.500000000000000003),
    (-40.25, 40.250000000000000003),
    (-40.0, 40.000000000000000004),
    (-39.75, 39.750000000000000005),
    (-39.5, 39.500000000000000007),
    (-39.25, 39.250000000000000009),
    (-39.0, 39.000000000000000012),
    (-38.75, 38.750000000000000015),
    (-38.5, 38.500000000000000019),
    (-38.25, 38.250000000000000024),
    (-38.0, 38.000000000000000031),
    (-37.75, 37.75000000000000004),
    (-37.5, 37.500000000000000052),
    (-37.25, 37.250000000000000066),
    (-37.0, 37.000000000000000085),
    (-36.75, 36.75000000000000011),
    (-36.5, 36.500000000000000141),
    (-36.25, 36.250000000000000181),
    (-36.0, 36.000000000000000232),
    (-35.75, 35.750000000000000298),
    (-35.5, 35.500000000000000382),
    (-35.25, 35.250000000000000491),
    (-35.0, 35.000000000000000631),
    (-34.75, 34.75000000000000081),
    (-34.5, 34.50000000000000104),
    (-34.25, 34.250000000000001335),
    (-34.0, 34.000000000000001714),
    (-33.75, 33.750000000000002201),
    (-33.5, 33.500000000000002826),
    (-33.25, 33.250000000000003628),
    (-33.0, 33.000000000000004659),
    (-32.75, 32.750000000000005982),
    (-32.5, 32.500000000000007681),
    (-32.25, 32.250000000000009863),
    (-32.0, 32.000000000000012664),
    (-31.75, 31.750000000000016261),
    (-31.5, 31.50000000000002088),
    (-31.25, 31.25000000000002681),
    (-31.0, 31.000000000000034425),
    (-30.75, 30.750000000000044202),
    (-30.5, 30.500000000000056757),
    (-30.25, 30.250000000000072877),
    (-30.0, 30.000000000000093576),
    (-29.75, 29.750000000000120154),
    (-29.5, 29.500000000000154281),
    (-29.25, 29.250000000000198101),
    (-29.0, 29.000000000000254367),
    (-28.75, 28.750000000000326613),
    (-28.5, 28.50000000000041938),
    (-28.25, 28.250000000000538494),
    (-28.0, 28.00000000000069144),
    (-27.75, 27.750000000000887827),
    (-27.5, 27.500000000001139992),
    (-27.25, 27.250000000001463779),
    (-27.0, 27.000000000001879529),
    (-26.75, 26.750000000002413363),
    (-26.5, 26.500000000003098819),
    (-26.25, 26.250000000003978963),
    (-26.0, 26.000000000005109089),
    (-25.75, 25.7500000000065602),
    (-25.5, 25.500000000008423464),
    (-25.25, 25.250000000010815942),
    (-25.0, 25.000000000013887944),
    (-24.75, 24.750000000017832473),
    (-24.5, 24.500000000022897348),
    (-24.25, 24.250000000029400777),
    (-24.0, 24.000000000037751345),
    (-23.75, 23.750000000048473687),
    (-23.5, 23.500000000062241446),
    (-23.25, 23.250000000079919599),
    (-23.0, 23.000000000102618796),
    (-22.75, 22.750000000131765143),
    (-22.5, 22.500000000169189792),
    (-22.25, 22.250000000217243993),
    (-22.0, 22.000000000278946809),
    (-21.75, 21.750000000358174793),
    (-21.5, 21.500000000459905538),
    (-21.25, 21.2500000005905304),
    (-21.0, 21.000000000758256043),
    (-20.75, 20.750000000973620031),
    (-20.5, 20.500000001250152866),
    (-20.25, 20.250000001605228054),
    (-20.0, 20.00000000206115362),
    (-19.75, 19.750000002646573635),
    (-19.5, 19.500000003398267814),
    (-19.25, 19.250000004363462243),
    (-19.0, 19.000000005602796422),
    (-18.75, 18.750000007194133004),
    (-18.5, 18.500000009237449619),
    (-18.25, 18.250000011861120081),
    (-18.0, 18.000000015229979629),
    (-17.75, 17.750000019555680897),
    (-17.5, 17.500000025109991242),
    (-17.25, 17.250000032241866853),
    (-17.0, 17.000000041399376331),
    (-16.75, 16.750000053157851131),
    (-16.5, 16.500000068256031434),
    (-16.25, 16.250000087642478354),
    (-16.0, 16.000000112535168387),
    (-15.75, 15.750000144498014171),
    (-15.5, 15.500000185539119049),
    (-15.25, 15.250000238236938372),
    (-15.0, 15.000000305902273714),
    (-14.75, 14.750000392786277408),
    (-14.5, 14.500000504347535385),
    (-14.25, 14.250000647595007895),
    (-14.0, 14.000000831528373384),
    (-13.75, 13.750001067703440039),
    (-13.5, 13.500001370958146621),
    (-13.25, 13.250001760344762748),
    (-13.0, 13.00000226032685244),
    (-12.75, 12.750002902316196927),
    (-12.5, 12.500003726646228124),
    (-12.25, 12.250004785105943491),
    (-12.0, 12.000006144193477733),
    (-11.75, 11.750007889293706641),
    (-11.5, 11.500010130042289579),
    (-11.25, 11.250013007213059905),
    (-11.0, 11.000016701561318394),
    (-10.75, 10.750021445178367108),
    (-10.5, 10.500027536070228686),
    (-10.25, 10.25003535687578871),
    (-10.0, 10.000045398899216865),
    (-9.75, 9.7500582929646629898),
    (-9.5, 9.5000748490286292672),
    (-9.25, 9.2500961070336324846),
    (-9.0, 9.0001234021897232588),
    (-8.75, 8.7501584487714461358),
    (-8.5, 8.5002034476721294431),
    (-8.25, 8.250261224435227779),
    (-8.0, 8.0003354063728957688),
    (-7.75, 7.7504306497976388198),
    (-7.5, 7.5005529314753607964),
    (-7.25, 7.2507099223343393073),
    (-7.0, 7.0009114664537742447),
    (-6.75, 6.7511701946758545583),
    (-6.5, 6.5015023101597542838),
    (-6.25, 6.2519285932042193808),
    (-6.0, 6.0024756851377304495),
    (-5.75, 5.7531777264714099267),
    (-5.5, 5.5040784432705707209),
    (-5.25, 5.2552337981517430318),
    (-5.0, 5.0067153484891180686),
    (-4.75, 4.7586144837621755578),
    (-4.5, 4.5110477448485938163),
    (-4.25, 4.2641634569315049757),
    (-4.0, 4.0181499279178097404),
    (-3.75, 3.7732454643724250282),
    (-3.5, 3.5297504182726205652),
    (-3.25, 3.2880413716877831286),
    (-3.0, 3.0485873515737420588),
    (-2.75, 2.8119675890031986246),
    (-2.5, 2.5788897342925496233),
    (-2.25, 2.3502065589167472117),
    (-2.0, 2.1269280110429724964),
    (-1.75, 1.9102241504380872269),
    (-1.5, 1.7014132779827524095),
    (-1.25, 1.501929081345372889),
    (-1.0, 1.313261687518222834),
    (-0.75, 1.1368710061148999437),
    (-0.5, 0.97407698418010668087),
    (-0.25, 0.82593941987884356221),
    (0.0, 0.69314718055994530942),
    (0.25, 0.57593941987884356221),
    (0.5, 0.47407698418010668087),
    (0.75, 0.38687100611489994367),
    (1.0, 0.31326168751822283405),
    (1.25, 0.25192908134537288895),
    (1.5, 0.2014132779827524095),
    (1.75, 0.16022415043808722689),
    (2.0, 0.12692801104297249644),
    (2.25, 0.10020655891674721167),
    (2.5, 0.078889734292549623344),
    (2.75, 0.061967589003198624576),
    (3.0, 0.048587351573742058759),
    (3.25, 0.038041371687783128561),
    (3.5, 0.029750418272620565195),
    (3.75, 0.023245464372425028196),
    (4.0, 0.018149927917809740355),
    (4.25, 0.014163456931504975715),
    (4.5, 0.011047744848593816322),
    (4.75, 0.0086144837621755578298),
    (5.0, 0.0067153484891180686164),
    (5.25, 0.0052337981517430317827),
    (5.5, 0.0040784432705707208915),
    (5.75, 0.0031777264714099266643),
    (6.0, 0.0024756851377304495309),
    (6.25, 0.0019285932042193807783),
    (6.5, 0.0015023101597542838136),
    (6.75, 0.0011701946758545582612),
    (7.0, 0.0009114664537742446917),
    (7.25, 0.00070992233433930726202),
    (7.5, 0.00055293147536079637963),
    (7.75, 0.00043064979763881981959),
    (8.0, 0.00033540637289576883157),
    (8.25, 0.00026122443522777901603),
    (8.5, 0.00020344767212944309265),
    (8.75, 0.00015844877144613576784),
    (9.0, 0.00012340218972325881635),
    (9.25, 0.000096107033632484560159),
    (9.5, 0.000074849028629267164088),
    (9.75, 0.000058292964662989799903),
    (10.0, 0.000045398899216864646769),
    (10.25, 0.000035356875788710492003),
    (10.5, 0.000027536070228685511566),
    (10.75, 0.000021445178367107799118),
    (11.0, 0.000016701561318393958462),
    (11.25, 0.000013007213059905050396),
    (11.5, 0.000010130042289579062257),
    (11.75, 0.0000078892937066407887305),
    (12.0, 0.0000061441934777328054346),
    (12.25, 0.0000047851059434913028976),
    (12.5, 0.0000037266462281239903127),
    (12.75, 0.0000029023161969266758305),
    (13.0, 0.0000022603268524403896957),
    (13.25, 0.0000017603447627484182669),
    (13.5, 0.0000013709581466205350131),
    (13.75, 0.0000010677034400392618969),
    (14.0, 0.00000083152837338375418768),
    (14.25, 0.00000064759500789452853521),
    (14.5, 0.00000050434753538464847009),
    (14.75, 0.0000003927862774075639428),
    (15.0, 0.0000003059022737137204859),
    (15.25, 0.00000023823693837176013583),
    (15.5, 0.00000018553911904921441077),
    (15.75, 0.00000014449801417108592326),
    (16.0, 0.00000011253516838717681502),
    (16.25, 0.000000087642478353834244686),
    (16.5, 0.000000068256031433905731001),
    (16.75, 0.000000053157851131365621967),
    (17.0, 0.000000041399376330897474477),
    (17.25, 0.000000032241866852798338444),
    (17.5, 0.000000025109991242183985306),
    (17.75, 0.000000019555680896638166488),
    (18.0, 0.000000015229979628736488102),
    (18.25, 0.000000011861120081000744767),
    (18.5, 0.0000000092374496193053570319),
    (18.75, 0.0000000071941330044476086006),
    (19.0, 0.0000000056027964218416036384),
    (19.25, 0.0000000043634622434238001045),
    (19.5, 0.0000000033982678137209591517),
    (19.75, 0.0000000026465736354069409938),
    (20.0, 0.0000000020611536203143807032),
    (20.25, 0.0000000016052280538972330555),
    (20.5, 0.0000000012501528656053015349),
    (20.75, 0.00000000097362003082698855858),
    (21.0, 0.00000000075825604250371455972),
    (21.25, 0.00000000059053039972004089777),
    (21.5, 0.00000000045990553775947512606),
    (21.75, 0.0000000003581747929641734824),
    (22.0, 0.00000000027894680924798681957),
    (22.25, 0.00000000021724399348430421947),
    (22.5, 0.00000000016918979224720044323),
    (22.75, 0.00000000013176514269227364171),
    (23.0, 0.00000000010261879631175359436),
    (23.25, 0.000000000079919598926345748397),
    (23.5, 0.000000000062241446227140833507),
    (23.75, 0.000000000048473687061527706279),
    (24.0, 0.000000000037751345442078395475),
    (24.25, 0.000000000029400777392412521987),
    (24.5, 0.000000000022897348456193384658),
    (24.75, 0.000000000017832472907987390949),
    (25.0, 0.000000000013887943864867583102),
    (25.25, 0.000000000010815941557227200012),
    (25.5, 0.0000000000084234637544331700351),
    (25.75, 0.0000000000065602001681322605551),
    (26.0, 0.0000000000051090890280502733245),
    (26.25, 0.0000000000039789625358293240229),
    (26.5, 0.0000000000030988191387170241016),
    (26.75, 0.0000000000024133627718303018855),
    (27.0, 0.0000000000018795288165373169805),
    (27.25, 0.0000000000014637785141248376038),
    (27.5, 0.0000000000011399918530437055546),
    (27.75, 0.00000000000088782654784557172674),
    (28.0, 0.0000000000006914400106937812563),
    (28.25, 0.00000000000053849402177525857875),
    (28.5, 0.00000000000041937956583786650292),
    (28.75, 0.00000000000032661313427869137553),
    (29.0, 0.00000000000025436656473765993986),
    (29.25, 0.00000000000019810087980487833493),
    (29.5, 0.00000000000015428112031917688197),
    (29.75, 0.0000000000001201542573177106389),
    (30.0, 0.000000000000093576229688397367794),
    (30.25, 0.000000000000072877240958194268647),
    (30.5, 0.000000000000056756852326325613949),
    (30.75, 0.000000000000044202281036410752689),
    (31.0, 0.000000000000034424771084699172051),
    (31.25, 0.000000000000026810038677817672832),
    (31.5, 0.000000000000020879679116459117525),
    (31.75, 0.000000000000016261110446178057203),
    (32.0, 0.000000000000012664165549094095533),
    (32.25, 0.0000000000000098628620465804034284),
    (32.5, 0.0000000000000076812046852020654063),
    (32.75, 0.0000000000000059821282237671175422),
    (33.0, 0.0000000000000046588861451033865116),
    (33.25, 0.0000000000000036283441780470380521),
    (33.5, 0.0000000000000028257572871156072178),
    (33.75, 0.0000000000000022007019879753642273),
    (34.0, 0.0000000000000017139084315420114976),
    (34.25, 0.0000000000000013347932285976021105),
    (34.5, 0.0000000000000010395380116702214036),
    (34.75, 0.00000000000000080959301752125973477),
    (35.0, 0.00000000000000063051167601469873979),
    (35.25, 0.00000000000000049104298701591133545),
    (35.5, 0.00000000000000038242466280971346207),
    (35.75, 0.00000000000000029783262686202281952),
    (36.0, 0.00000000000000023195228302435691193),
    (36.25, 0.00000000000000018064461965456929793),
    (36.5, 0.00000000000000014068617124461466683),
    (36.75, 0.00000000000000010956650033262366629),
    (37.0, 0.000000000000000085330476257440654302),
    (37.25, 0.000000000000000066455441729150703188),
    (37.5, 0.000000000000000051755550058018684009),
    (37.75, 0.000000000000000040307262913476244999),
    (38.0, 0.000000000000000031391327920480295794),
    (38.25, 0.00000000000000002444759076612130982),
    (38.5, 0.00000000000000001903980283286452301),
    (38.75, 0.000000000000000014828213355760043297),
    (39.0, 0.00000000000000001154822417301578592),
    (39.25, 0.0000000000000000089937660290288209826),
    (39.5, 0.0000000000000000070043520261686451961),
    (39.75, 0.0000000000000000054549948428879222066),
    (40.0, 0.0000000000000000042483542552915889863),
    (40.25, 0.0000000000000000033086216207858245733),
    (40.5, 0.0000000000000000025767571091549809448),
    (40.75, 0.0000000000000000020067804543947086306),
    (41.0, 0.0000000000000000015628821893349887669),
    (41.25, 0.000000000000000001217173872902440898),
    (41.5, 0.00000000000000000094793596535047559409),
    (41.75, 0.00000000000000000073825327211649850489),
    (42.0, 0.0000000000000000005749522264293559805),
    (42.25, 0.0000000000000000004477732441718301198),
    (42.5, 0.00000000000000000034872615319944467337),
    (42.75, 0.00000000000000000027158820118920621182),
    (43.0, 0.00000000000000000021151310375910804864),
    (43.25, 0.00000000000000000016472657083745665697),
    (43.5, 0.00000000000000000012828918236087848927),
    (43.75, 0.000000000000000000099911715682242428175),
    (44.0, 0.000000000000000000077811322411337965154),
    (44.25, 0.000000000000000000060599518825771562565),
    (44.5, 0.000000000000000000047194952715261234162),
    (44.75, 0.000000000000000000036755466131663374596),
    (45.0, 0.000000000000000000028625185805493936444),
    (45.25, 0.000000000000000000022293317120883141026),
    (45.5, 0.000000000000000000017362052831002947254),
    (45.75, 0.000000000000000000013521580340512197092),
    (46.0, 0.000000000000000000010530617357553812379),
    (46.25, 0.0000000000000000000082012530442882373901),
    (46.5, 0.0000000000000000000063871422930584223502),
    (46.75, 0.000000000000000000004974311419422387845),
    (47.0, 0.0000000000000000000038739976286871871129),
    (47.25, 0.0000000000000000000030170723868383468759),
    (47.5, 0.0000000000000000000023496983374528170976),
    (47.75, 0.0000000000000000000018299469051898320814),
    (48.0, 0.0000000000000000000014251640827409351063),
    (48.25, 0.0000000000000000000011099189036438807005),
    (48.5, 0.00000000000000000000086440571130360945577),
    (48.75, 0.00000000000000000000067319984485464577081),
    (49.0, 0.00000000000000000000052428856633634639372),
    (49.25, 0.00000000000000000000040831634601813076879),
    (49.5, 0.00000000000000000000031799709001977494982),
    (49.75, 0.00000000000000000000024765638272182875672),
    (50.0, 0.0000000000000000000001928749847963917783),
    (-26.395191026256548, 26.395191026259988907),
    (-39.683396576928416, 39.683396576928416272),
    (-10.3941757389319, 10.394206348710318894),
    (-34.502772919758975, 34.502772919758976015),
    (-43.34849043204101, 43.348490432041010934),
    (-9.840898551492515, 9.8409517795360900545),
    (41.795504308771896, 0.00000000000000000070541243370238380863),
    (30.045235149580847, 0.000000000000089437606252986865218),
    (26.516260250543837, 0.0000000000030488390090530925706),
    (-27.807182430968236, 27.807182430969074758),
    (3.6680008174813565, 0.025207068533045760911),
    (-22.331735655854978, 22.331735656055171264),
    (-32.73354707146311, 32.73354707146311324),
    (-39.38167075684699, 39.3816707568469866),
    (-28.55995674210835, 28.559956742108746309),
    (42.747563142806044, 0.00000000000000000027225082988891883596),
    (32.89200487784194, 0.0000000000000051901962889457893058),
    (30.665234670232337, 0.000000000000048112485858220842339),
    (30.044783854296625, 0.000000000000089477978132055051499),
    (-30.656438198075996, 30.656438198076044664),
    (-19.015004270046443, 19.015004275565801307),
    (12.697560241313013, 0.0000030585739788631903789),
    (23.189470887871806, 0.00000000008490646408184153157),
    (35.46483579913472, 0.00000000000000039611155445710692848),
    (38.00507513611994, 0.000000000000000031232416248571726089),
    (-41.32817473650782, 41.328174736507818922),
    (10.585188371987982, 0.00002528748330302663715),
    (17.17014565164733, 0.000000034922110519158414162),
    (0.5953775710415314, 0.43912832433192493411),
    (-32.22098257592155, 32.220982575921563501),
    (-2.641211241485486, 2.7100606630928879895),
    (-41.06537927346096, 41.065379273460962396),
    (43.45883638999081, 0.00000000000000000013368022439503711824),
    (36.54841701850833, 0.00000000000000013403683569011253188),
    (4.763886958705385, 0.008496184837971618578),
    (-19.975426042667532, 19.975426044779964095),
    (40.88702894146864, 0.0000000000000000017498021640387585095),
    (7.236680168589146, 0.00071943821370155624791),
    (38.23172398787899, 0.000000000000000024898503120319608182),
    (34.80440882236347, 0.00000000000000076672090126637746777),
    (0.8372375332751574, 0.35970368337290625584),
    (-8.605395686826803, 8.6055787851549056198),
    (9.891247218998942, 0.000050614496715262152674),
    (-6.895698270669293, 6.8967098887981305792),
    (-33.86793938783915, 33.867939387839152767),
    (-19.4888403567261, 19.488840360162504488),
    (31.259231863462063, 0.000000000000026563671027355098824),
    (-45.67615309277515, 45.676153092775152231),
    (-45.36780009964873, 45.367800099648732726),
    (12.635074553990343, 0.0000032557881322632158226),
    (-21.95667883837813, 21.956678838669428185),
    (3.4621794879422154, 0.030879614851531879238),
    (-2.875991388500701, 2.9308206490466431789),
    (-15.715673457784398, 15.71567360732864305),
    (49.727887417211235, 0.0000000000000000000002531937015703016994),
    (-30.442650566668462, 30.442650566668522027),
    (-8.720534359267496, 8.7206975459120380675),
    (-29.732938382760366, 29.732938382760488602),
    (13.266498179101902, 0.0000017315405664582564904),
    (-22.369516504031683, 22.369516504224454332),
    (-14.416924539264798, 14.416925087300822904),
    (24.694268099046255, 0.000000000018854526484540718217),
    (-17.933109675025804, 17.933109691309366451),
    (5.8528983583392105, 0.0028674491981800960101),
    (40.43151015306577, 0.0000000000000000027594227817977218912),
    (-39.90205612821405, 39.902056128214049129),
    (-43.838975795982414, 43.838975795982413786),
    (-27.113055976123523, 27.113055976125201192),
    (26.516224132627585, 0.0000000000030489491287537237222),
    (11.543207512869714, 0.0000097016715388379067341),
    (-26.25828301746741, 26.258283017471355478),
    (-16.89330046282653, 16.893300508887473106),
    (-32.2460306503443, 32.246030650344312062),
    (-4.098124782982417, 4.1145922291727209886),
    (-45.718881221798036, 45.718881221798035597),
    (19.72918814615184, 0.0000000027022308955093773694),
    (39.59277791118227, 0.0000000000000000063837376393537063587),
    (45.4737598342345, 0.000000000000000000017823665890390400212),
    (23.487795647392588, 0.000000000063005717012497244062),
    (45.98675916129511, 0.000000000000000000010670978764148705725),
    (-48.181247470669256, 48.181247470669255506),
    (-21.100353209915678, 21.100353210601534011),
    (46.60067569681229, 0.000000000000000000005775421588394264488),
    (27.523943522514855, 0.0000000000011130206141971562251),
    (-8.95723189311245, 8.95736068711739871),
    (44.330836735298135, 0.000000000000000000055893618675802756535),
    (12.051047146352914, 0.0000058384216353935704862),
    (31.79278006982527, 0.000000000000015580129075269582671),
    (-20.658974634312365, 20.658974635378767919),
    (-30.85847951912607, 30.858479519126110669),
    (-5.585776051882405, 5.5895198728261595481),
    (-36.356237344408505, 36.35623734440850557),
    (-11.836536527566864, 11.836543762856650545),
    (46.181362240690476, 0.0000000000000000000087839369962595920642),
    (-16.86927708008136, 16.869277127262240863),
    (-49.06035336604354, 49.060353366043543133),
    (-45.52028070778748, 45.520280707787478036),
    (-33.043295618004485, 33.043295618004489909),
    (28.37456748213549, 0.00000000000047542489157297904421),
];
