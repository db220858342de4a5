// Generated by tests/oracle/gen_reference; do not edit.

#include "ahls/reference.hpp"

#include <array>

namespace ahls::reference {

namespace {

const std::array<BesselSample, 50> bessel_table = {{
    {0.5, {0.10000000000000001, 0}, {0.37689138147982482, -1.1527687670578921}, {0.37689138147982482, 1.1527687670578921}, {1.5736894873785721, 0}},
    {1.5, {0.10000000000000001, 0}, {-1.2775288684452737, 3.193171052657156}, {-1.2775288684452737, -3.193171052657156}, {-0.18024887795727923, -0}},
    {0.80000000000000004, {0.5, 0.5}, {0.79589855512107355, -0.38783988047515933}, {2.2634608398603389, 1.568664608156155}, {0.50117409689792924, -0.37592768479166117}},
    {2, {0.5, 0.5}, {-0.82073871842150758, -1.1659113058767514}, {-18.383320011168017, 23.522558450172333}, {0.14484144598121787, 0.10303553418821434}},
    {1, {1, 0}, {1.9007996758194254, -1.0639600135544409}, {1.9007996758194254, 1.0639600135544409}, {0.28942803702599212, 0}},
    {3, {1, 0}, {-26.252622532933088, 1.7476538351177968}, {-26.252622532933088, -1.7476538351177968}, {-0.00088614792322813934, -0}},
    {1.5, {3, 2}, {0.67661128805586834, 5.5908612911508495}, {1.4287832026049916, 5.1169939467659056}, {-0.013374488199576024, -0.021229389436503623}},
    {0.5, {3, 2}, {-0.37730008825518468, 4.4591056294615807}, {-0.34216199037980216, 4.4300157279058947}, {-0.019855878115043565, -0.023984192152471731}},
    {2, {0, 4}, {-0.17126415831567296, 0.07955147695928555}, {-91.710527668515127, -42.599152096367995}, {-0.25038591695825491, 0.53703933139170879}},
    {0.80000000000000004, {0, 4}, {-0.21279700559284709, 0.0063156660575961121}, {-2.62703945545254, -0.077968690746112096}, {-0.021590104520164615, 0.6184272954811918}},
    {3, {5, 0}, {81.587841991171047, -3.1340160187455388}, {81.587841991171047, 3.1340160187455388}, {0.0015891029050314699, 0}},
    {1, {5, 0}, {30.542593924781222, -0.012377721889973096}, {30.542593924781222, 0.012377721889973096}, {0.0033670999885610448, 0}},
    {0.5, {2, 7}, {1.1037037448238161, 0.041237098591456738}, {1.1921844196600095, 0.062827754877403358}, {0.014737122393381059, -0.06039420558784396}},
    {1.5, {2, 7}, {1.1270949991354322, -0.11162647257970394}, {3.0951449791363252, 0.64172014679251232}, {0.021262544444926573, -0.05554647634109916}},
    {0.80000000000000004, {10, 10}, {-2358.8899954603548, -378.49391886678262}, {-2358.890042341779, -378.49395262515316}, {-8.6474735693857481e-06, 1.2009047529338273e-05}},
    {2, {10, 10}, {-2590.6943154658916, -183.01124066160978}, {-2590.6960834721194, -183.01274274468369}, {-8.8123681441929051e-06, 1.0372476749447959e-05}},
    {1, {15, 0}, {351589.42981239484, -3.4949884596378489e-07}, {351589.42981239484, 3.4949884596378489e-07}, {9.507384078487453e-08, 0}},
    {3, {15, 0}, {464052.08343777771, -0.00014469250029484681}, {464052.08343777771, 0.00014469250029484681}, {7.3366336093854147e-08, 0}},
    {1.5, {0, 20}, {0.085783350884126877, 0.026308719389449182}, {9.5492120518368484, -2.9286281973464896}, {-0.083400490436141686, -0.26709693543601498}},
    {0.5, {0, 20}, {0.10109126558644843, 0.02439230089389384}, {0.4862972465167712, -0.11733861171977725}, {-0.096741191117604305, -0.26292983466776931}},
    {2, {24, 3}, {-2294772278.1100149, 501524491.75003421}, {-2294772278.1100149, 501524491.75003421}, {-8.7963137997347976e-12, -7.9299279220680261e-13}},
    {0.80000000000000004, {24, 3}, {-2142844085.1873865, 448120217.2521944}, {-2142844085.1873865, 448120217.2521944}, {-9.4184655049541101e-12, -7.7034838231826278e-13}},
    {3, {29, 0}, {342627489622.49725, -9.9794132897580681e-11}, {342627489622.49725, 9.9794132897580681e-11}, {5.0600617719917892e-14, 0}},
    {1, {29, 0}, {297700373715.72534, -2.1305950173429946e-13}, {297700373715.72534, 2.1305950173429946e-13}, {5.7958374911745646e-14, 0}},
    {0.5, {33, 1}, {8307654551206.9551, 12510830274607.305}, {8307654551206.9551, 12510830274607.305}, {5.3225617481095096e-16, -8.567999993197854e-16}},
    {1.5, {33, 1}, {8579345295272.2734, 12893460449433.498}, {8579345295272.2734, 12893460449433.498}, {5.1735095770041834e-16, -8.3115247970090985e-16}},
    {0.80000000000000004, {36, 0}, {290272293604182.38, -9.3427236185823208e-17}, {290272293604182.38, 9.3427236185823208e-17}, {4.7864250752478506e-17, 0}},
    {2, {36, 0}, {304347419780572, -3.8956802623322272e-15}, {304347419780572, 3.8956802623322272e-15}, {4.5710079875520669e-17, 0}},
    {1, {12, 35}, {-10529.965261056042, 2067.5546634438415}, {-10529.965269069871, 2067.5546588138259}, {-6.2974943035523506e-07, 1.0899970051852817e-06}},
    {3, {12, 35}, {-10614.253307012581, 3248.254491191065}, {-10614.257190256129, 3248.251688213064}, {-7.1062503467641467e-07, 9.8449937195975038e-07}},
    {1.5, {40, 0}, {15325230474184100, -1.4460805689748866e-17}, {15325230474184100, 1.4460805689748866e-17}, {8.1628699401069369e-19, 0}},
    {0.5, {40, 0}, {14941994568018078, -6.1290410404837314e-19}, {14941994568018078, 6.1290410404837314e-19}, {8.3669923481164983e-19, 0}},
    {2, {0.29999999999999999, 1.2}, {0.27978254283229881, -0.37013611657674633}, {44.479521104848246, 67.340667550867181}, {0.39724336132011462, -0.25930947152954265}},
    {0.80000000000000004, {0.29999999999999999, 1.2}, {0.48048497012523972, 0.097608424823888457}, {3.3099382536277493, 0.027337377967486753}, {-0.0180004843592085, -0.72478683402676791}},
    {3, {6.5, 2.5}, {-84.639030257158069, 175.21769590200111}, {-83.663765315748805, 174.00146918274268}, {-0.00030834389505195967, -0.00024725405714249394}},
    {1, {6.5, 2.5}, {-71.450670999243755, 83.518341657731995}, {-71.448403275406477, 83.514055985375919}, {-0.00058291370049214314, -0.00030844338620619836}},
    {0.5, {20, 20}, {26762417.577313464, 24998568.352798905}, {26762417.577313464, 24998568.352798905}, {1.628887359602885e-11, -4.824338278216407e-10}},
    {1.5, {20, 20}, {28087487.343881194, 24918624.94696974}, {28087487.343881208, 24918624.94696974}, {2.7361367378147841e-11, -4.7000486817978845e-10}},
    {0.80000000000000004, {0.001, 0}, {1.3657605576873615, 0.75802380750856846}, {1.3657605576873615, -0.75802380750856846}, {-0.38834758556674659, -0}},
    {2, {0.001, 0}, {-6.0705995161814572, -2.4001560677742857}, {-6.0705995161814572, 2.4001560677742857}, {0.028162302392341951, 0}},
    {1, {0, 31}, {0.025575258143955764, -0.064394431322305934}, {0.59182918771326509, 1.4901317424920955}, {0.21143814300386146, -0.077018760670329312}},
    {3, {0, 31}, {0.01563358455432997, -0.069745116662758733}, {193.72587377254331, 864.25692200696858}, {0.21912842969004784, -0.049110391200280344}},
    {1.5, {28, 12}, {76788392101.651138, -76803957631.081955}, {76788392101.651138, -76803957631.081955}, {1.4049734536203907e-13, 5.6055883919364758e-14}},
    {0.5, {28, 12}, {75465410159.187927, -73492114455.790253}, {75465410159.187927, -73492114455.790253}, {1.454627982937945e-13, 5.5928922548334167e-14}},
    {2, {8, 0}, {560.39556965859845, -0.0098480319681790475}, {560.39556965859845, 0.0098480319681790475}, {0.00011555217511938504, 0}},
    {0.80000000000000004, {8, 0}, {446.34583973843598, -0.00027529172064104802}, {446.34583973843598, 0.00027529172064104802}, {0.0001410363025257064, 0}},
    {3, {2, 0}, {6.1007652023015719, -28.080149914939486}, {6.1007652023015719, 28.080149914939486}, {0.014238040755583182, 0}},
    {1, {2, 0}, {3.2174906632719611, -0.33961614834290055}, {3.2174906632719611, 0.33961614834290055}, {0.092385459890391181, 0}},
    {0.5, {0.69999999999999996, 0}, {1.2626866998697812, -0.42869631909249667}, {1.2626866998697812, 0.42869631909249667}, {0.58523002176365491, 0}},
    {1.5, {0.69999999999999996, 0}, {0.36703423547175434, -3.5524809905036179}, {0.36703423547175434, 3.5524809905036179}, {0.20053129066480738, 0}},
}};

const std::array<GammaSample, 10> gamma_table = {{
    {{1, 0.69999999999999996}, {0.67282539316324541, -0.20285243648300008}},
    {{1, 1}, {0.49801566811835607, -0.15494982830181067}},
    {{1, -1}, {0.49801566811835607, 0.15494982830181067}},
    {{0.5, 0}, {1.7724538509055161, 0}},
    {{-2.5, 0.29999999999999999}, {-0.61382299743774149, -0.21123261493704179}},
    {{3, 10}, {-7.2258945942176381e-05, -9.8831113206649543e-05}},
    {{25, -5}, {-3.5484668903447933e+23, 1.1759949180331822e+23}},
    {{1, 2}, {0.15190400267003615, 0.019804880161854981}},
    {{1, 0.5}, {0.80169409706971717, -0.19963973816459635}},
    {{-0.29999999999999999, -4}, {0.0015023443548233854, -0.00033455203637081186}},
}};

}  // namespace

std::span<const BesselSample> bessel_samples() { return bessel_table; }
std::span<const GammaSample> gamma_samples() { return gamma_table; }

}  // namespace ahls::reference
