// Generated by gen_coefficient_table.py -- do not edit by hand.
// Reference values computed with 200-digit arithmetic.
#pragma once

namespace kdmc_test {

struct CoefficientReference {
    double theta, rate, mu_v, sigma_v, v_next;
    double a_ref, d_ref;
};

inline constexpr CoefficientReference coefficient_references[] = {
    {1.000000000000000000000000e-10, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 5.773502691751920077796607e-16},
    {1.000000000000000000000000e-8, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 5.773502677462500940609918e-13},
    {0.000001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 5.773501248520837261736770e-10},
    {0.00001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 1.825737294003895445309269e-8},
    {0.0001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.0000005773358356854834589334626},
    {0.0005000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.000006454165442745204713963941},
    {0.001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.00001825285502751713467914380},
    {0.002000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.00005161396709505231182808703},
    {0.003000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.00009479721589743201595326722},
    {0.004000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.0001459133915073871620870247},
    {0.005000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.0002038692131650676249977603},
    {0.006000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.0002679260873490204370290239},
    {0.008000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.0004122931426684718906498633},
    {0.01000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.0005759094161197289384255603},
    {0.05000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.006374986504098441998819438},
    {0.1000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.01780886720232949824682345},
    {0.5000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.1807022372943044610244160},
    {1.000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 0.4552764512125066298761668},
    {2.000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 1.040520190045777792716305},
    {5.000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 2.468669937028276880651321},
    {10.00000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 0.0, 0.0, 4.000136197470568580894674},
    {1.000000000000000000000000e-10, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 1.699999999915000000002833e-10, 1.138712723452964086828460e-15},
    {1.000000000000000000000000e-8, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 1.699999991500000028333333e-8, 1.138712718540838431365221e-12},
    {0.000001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.000001699999150000283333262500, 1.138712227328417906182854e-9},
    {0.00001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.00001699991500028333262500142, 3.600910116518669478697477e-8},
    {0.0001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.0001699915002833262501416643, 0.000001138663107536544442602165},
    {0.0005000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.0008497875354122400260047769, 0.00001272842199369940084699007},
    {0.001000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.001699150283262514164305893, 0.00003599357229117768469271121},
    {0.002000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.003396602265533786515598719, 0.0001017608562952340893628389},
    {0.003000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.005092357644265940779487402, 0.0001868652207859683199360498},
    {0.004000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.006786418115214497001079143, 0.0002875725639150317747849482},
    {0.005000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.008478785372440067300640781, 0.0004017199172095644366603669},
    {0.006000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.01016946110831004993435209, 0.0005278446916909188971237958},
    {0.008000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.01354574477699692842222151, 0.0008119629276173681579878986},
    {0.01000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.01691528262641430892435984, 0.001133765597836895198100273},
    {0.05000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.08290997834878618454457696, 0.01245787495112718663309593},
    {0.1000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.1617763893388687256207766, 0.03448552929676449731606707},
    {0.5000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 0.6688978784885231798735408, 0.3265089692614710000884941},
    {1.000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 1.074604950008548053287610, 0.7614555197146492753089055},
    {2.000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 1.469930018497758423780201, 1.534690260374782282018280},
    {5.000000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 1.688545490101554705935719, 2.964704603146258306669110},
    {10.00000000000000000000000, 1.000000000000000000000000, 0.0, 1.000000000000000000000000, 1.700000000000000000000000, 1.699922820119403775752389, 4.346086225147551538528080},
    {1.000000000000000000000000e-13, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -8.999999999400000000020000e-14, 9.018499505287266281881231e-19},
    {1.000000000000000000000000e-11, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -8.999999940000000199999999e-12, 9.018499469793557059810086e-16},
    {1.000000000000000000000000e-9, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -8.999994000001999999500000e-10, 9.018495920423652697897771e-13},
    {1.000000000000000000000000e-8, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -8.999940000199999500001000e-9, 2.851888614055721762413107e-11},
    {0.0000001000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -8.999400019999500009999833e-8, 9.018140993611441419040164e-10},
    {0.0000005000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.0000004498500249968753124739602, 1.008098506152556793974648e-8},
    {0.000001000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.0000008994001999500099983335714, 2.850766529464645763564864e-8},
    {0.000002000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000001797601599200319893363802, 8.059981414765985507574124e-8},
    {0.000003000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000002694605395952428785520519, 0.0000001480124866967632391635530},
    {0.000004000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000003590412787210233177232336, 0.0000002277896128705984983667917},
    {0.000005000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000004485024968781223976922905, 0.0000003182192317476822158747512},
    {0.000006000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000005378443135277682306601473, 0.0000004181439420857780016795142},
    {0.000008000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000007161702195527243592156360, 0.0000006432636932461155243536762},
    {0.00001000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.000008940199500998335711312827, 0.0000008982749867942590113464370},
    {0.00005000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.00004352469059914318909028962, 0.000009885411121588955399833420},
    {0.0001000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.00008419509835684851220290113, 0.00002741705535574478380848776},
    {0.0005000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.0003221632083448398916754406, 0.0002636337483898790316859708},
    {0.001000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.0004585446705942692140853715, 0.0006268181942111905282427662},
    {0.002000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, -0.0004375976601160647697272006, 0.001310258186179439678077083},
    {0.005000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, 0.0003080855363989025605159633, 0.002727130258220444415406897},
    {0.01000000000000000000000000, 1000.000000000000000000000, 0.3000000000000000000000000, 1.000000000000000000000000, -0.9000000000000000000000000, 0.001800054479915714981821843, 0.004176096511979707450832101},
    {4.000000000000000000000000e-10, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 1.399999999930000000002333e-9, 9.309493362104441968398876e-15},
    {4.000000000000000000000000e-8, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.0000001399999993000000023333333, 9.309493321694079747034508e-12},
    {0.000004000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.00001399999300000233333275000, 9.309489280659052350544142e-9},
    {0.00004000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.0001399993000023333275000117, 0.0000002943907380855926063918031},
    {0.0004000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.001399930002333275001166647, 0.000009309085189103445614109232},
    {0.002000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.006998250291630211978862869, 0.0001040604850844822073866227},
    {0.004000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.01399300233275011664722500, 0.0002942629874536345633906793},
    {0.008000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.02797201865733706542257769, 0.0008319366470165361999992195},
    {0.01200000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.04193706295277833583107272, 0.001527695486205338514716716},
    {0.01600000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.05588814918411938706771059, 0.002351010565348605986176394},
    {0.02000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.06982529130244761306410055, 0.003284197830987674452870536},
    {0.02400000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.08374850324490629357701719, 0.004315299249004106805967799},
    {0.03200000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.1115531922811511752418242, 0.006638020470496935377483417},
    {0.04000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.1393023275116472499653163, 0.009268795238800898510975863},
    {0.2000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 0.6827880569900038727200455, 0.1018348355195071113699175},
    {0.4000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 1.332276147496565975700513, 0.2818573713278999897020716},
    {2.000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 5.508570764023132069546807, 2.665601495866148686714754},
    {4.000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 8.849687823599807497662667, 6.207354424894100874625078},
    {8.000000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 12.10530603468742231348401, 12.47393032437849752427077},
    {20.00000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 13.90566874201280346064710, 23.93369854424383811847469},
    {40.00000000000000000000000, 0.2500000000000000000000000, 0.0, 2.000000000000000000000000, 3.500000000000000000000000, 13.99936440098332521207850, 34.92694899591803919230562},
};

}  // namespace kdmc_test
