// Copyright 2026 The softring Authors
// SPDX-License-Identifier: Apache-2.0

// Generated by gen_reference_values.py (mpmath, 40 digits). Do not edit.

#pragma once

namespace softring::oracle {

struct BesselRef { double nu, x, i, k; };
struct KummerRef { double a; int b; double x, m, u; };

inline constexpr BesselRef kBessel[] = {
    {0, 1.0, 1.2660658777520083356, 0.42102443824070833334},
    {1, 1.0, 0.56515910399248502721, 0.60190723019723457474},
    {0.5, 2.0, 2.0462368630890550366, 0.11993777196806144737},
    {2.5, 0.1, 0.00016832901734888535151, 1187.0212236418929429},
    {7.3, 3.7, 0.01438963001408815628, 4.2409052894067441132},
    {20, 5.0, 5.0242393579718059921e-11, 482700052.06214846917},
    {0.25, 1.999, 2.2017395503792589738, 0.1155206963219749862},
    {0.25, 2.001, 2.2049707829419260911, 0.11523604570347141502},
    {33.6, 29.5, 8860.3255544890548373, 1.262029686164307399e-6},
    {60, 30.0, 1.5955773253636701365e-10, 46713096.235994666998},
    {0.75, 0.001, 0.003638165962459664261, 183.23463852175821642},
    {12.0, 250.0, 7.0871945454516251366e+106, 2.8187513300445703345e-110},
    {3.3, 600.0, 6.0907340052333386543e+258, 1.3681783148372080577e-262},
    {2.683032, 0.108016, 0.000097244704528679870934, 1914.5660607580262108},
    {0.388884, 11.543406, 12159.824516129695833, 3.5634579021502225507e-6},
    {56.535408, 0.214602, 2.534222432471841751e-131, 3.4898086354926799401e+128},
    {53.685498, 0.04132, 5.3619729931731258712e-162, 1.7369538009230162502e+159},
    {30.747869, 0.013356, 3.7568819348012710355e-101, 4.3284000585361449795e+98},
    {16.703753, 0.030162, 2.4493618532036510496e-45, 1.222087451007479383e+43},
    {15.887153, 7.180604, 0.000091379179767691334766, 313.77420348956736711},
    {49.229117, 0.058795, 2.6526598108538171396e-139, 3.8288300582562859475e+136},
    {21.210019, 0.741608, 7.5093008217270416109e-30, 3.1373541399309607139e+27},
    {44.640392, 1.742499, 7.1280055512559015468e-59, 1.5701574445582448998e+56},
    {40.448258, 0.016283, 7.2169949593121302217e-134, 1.7128279639883978934e+131},
    {41.618846, 1.712426, 4.719001323768481061e-54, 2.5436792770147303352e+51},
};

inline constexpr KummerRef kKummer[] = {
    {0.75, 1, 2.0, 5.1955031736720331047, 0.49037302525398284307},
    {-1.0, 1, 3.0, -2.0, 2.0},
    {2.5, 3, 0.5, 1.5232085904679367636, 2.5541277829040564495},
    {-2.3, 2, 4.0, -0.084876593576180815712, -5.1327061635555397042},
    {1.3, 6, 19.0, 21349.489450396265121, 0.028258502749482080884},
    {-4.6, 4, 12.0, 0.032879181006868274959, -2146.1215634951276518},
    {4.9, 1, 20.0, 5372838469636.3320444, 1.5936358826851994872e-7},
    {0.01, 1, 0.7, 1.00845930929177217, 1.0034748784061758367},
    {-0.999, 3, 1.5, 0.50039562412309838551, -1.4978334095227343815},
    {10.5, 21, 2.5, 3.6163275069905554152, 3944.8189133058653726},
    {-0.88, 1, 2.5, -1.4406780343286123669, 1.5476757368815955779},
    {5.2, 10, 10.0, 508.77823607465314139, 0.00003501722257068491722},
    {0.3, 2, 45.0, 18571368291824337.471, 0.32066361432142642346},
    {1.353224, 6, 8.064953, 18.08659564020561191, 0.11309100822172033135},
    {0.790364, 6, 0.517787, 1.0730105733155671803, 948.93559969423599301},
    {4.81704, 1, 0.596454, 7.9012235699333298292, 0.0039020422356042626122},
    {-4.063666, 12, 3.836793, 0.18489269519934005965, 5900.8644555957786687},
    {1.739189, 11, 0.508826, 1.0853596464552136649, 542183024.99459566208},
    {8.986403, 10, 0.032843, 1.0299584924503328372, 23156599773692.613558},
    {1.959872, 6, 0.764354, 1.2956968203097640865, 163.84135122427158764},
    {8.58434, 3, 13.550865, 1869804270.2754138738, 1.1176654601130008036e-11},
    {6.682867, 3, 0.039046, 1.0903162150625640108, 1.4052114620630515466},
    {6.38324, 6, 0.055288, 1.0605680582835942423, 195008.65765267885749},
    {6.926947, 7, 8.266127, 3668.4387644598244724, 2.5815365384966061577e-7},
    {-2.025548, 11, 0.873999, 0.84506827495235905991, -240346.93489897672635},
};

}  // namespace softring::oracle
