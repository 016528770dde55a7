// Generated by tests/reference/gen_t_reference.py from scipy.stats; do not edit.
#pragma once

#include <array>
#include <vector>

namespace reference {

struct TCdfPoint {
  double df;
  double t;
  double cdf;
};

inline const std::array<TCdfPoint, 50> kStudentTCdf = {{
    {1, -6.0, 0.052568456711253424},
    {1, -3.0, 0.10241638234956672},
    {1, -2.0, 0.1475836176504332},
    {1, -1.5, 0.1871670418109988},
    {1, -1.0, 0.24999999999999978},
    {1, -0.5, 0.3524163823495668},
    {1, -0.1, 0.4682744825694464},
    {1, 0.0, 0.5},
    {1, 0.3, 0.5927735790777423},
    {1, 0.8, 0.7147767125227227},
    {1, 1.2, 0.7788579383763046},
    {1, 2.5, 0.8788810584091566},
    {1, 4.0, 0.9220208696226307},
    {4, -6.0, 0.001941268523480256},
    {4, -3.0, 0.019970984035859413},
    {4, -2.0, 0.05805826175840775},
    {4, -1.5, 0.10399999999999991},
    {4, -1.0, 0.1869504831500295},
    {4, -0.5, 0.32166498159093165},
    {4, -0.1, 0.4625779204697266},
    {4, 0.0, 0.5},
    {4, 0.3, 0.6104392858612702},
    {4, 0.8, 0.7657364322188845},
    {4, 1.2, 0.8518243033438233},
    {4, 2.5, 0.966616727594006},
    {4, 4.0, 0.9919349550499538},
    {9, -6.0, 0.0001012496610338204},
    {9, -3.0, 0.007478181955207101},
    {9, -2.0, 0.03827641188535047},
    {9, -1.5, 0.08392532802853743},
    {9, -1.0, 0.17171819806895677},
    {9, -0.5, 0.3145356499130132},
    {9, -0.1, 0.4612682239783406},
    {9, 0.0, 0.5},
    {9, 0.3, 0.6145046481292376},
    {9, 0.8, 0.777843500776148},
    {9, 1.2, 0.8696134013047692},
    {9, 2.5, 0.9830690861585071},
    {9, 4.0, 0.9984447858448071},
    {29, -6.0, 7.963954213087339e-07},
    {29, -3.0, 0.0027495960669517033},
    {29, -2.0, 0.027471818591483593},
    {29, -1.5, 0.07221184802019287},
    {29, -1.0, 0.16279099400809682},
    {29, -0.5, 0.3104240420968907},
    {29, -0.1, 0.4605162222436869},
    {29, 0.0, 0.5},
    {29, 0.3, 0.6168414533355161},
    {29, 0.8, 0.7848921657248402},
    {29, 1.2, 0.8800744363676873},
}};

struct PairedCase {
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double p;
};

inline const std::vector<PairedCase> kPairedCases = {
    {{71.122, 70.972},
     {76.703, 73.987},
     -3.3499610288386577, 0.1846771066902696},
    {{87.459, 85.814, 69.002, 85.843, 80.319},
     {86.611, 88.402, 69.452, 83.982, 80.851},
     -0.22993309446140311, 0.8294236217501162},
    {{85.708, 80.473, 80.028, 94.035, 85.155, 85.763, 89.669, 67.891, 85.006, 92.557},
     {86.205, 78.719, 82.474, 89.55, 86.009, 90.028, 92.234, 69.294, 85.537, 94.212},
     -1.0341773022048673, 0.32804124119102357},
    {{75.928, 85.887, 67.162, 74.163, 87.125, 92.27, 84.953, 83.923, 78.156, 73.731, 74.497, 77.51, 80.62, 78.885, 70.709, 83.231, 89.272, 104.094, 66.532, 74.552, 83.526, 82.7, 74.567, 65.265, 75.914, 78.745, 69.035, 86.372, 75.851, 81.887},
     {72.872, 84.183, 63.268, 72.944, 84.755, 88.193, 86.979, 80.487, 74.576, 75.726, 73.456, 76.228, 78.069, 78.609, 69.176, 85.921, 89.198, 101.105, 68.083, 72.013, 79.615, 87.583, 70.923, 57.427, 76.266, 73.03, 67.891, 86.619, 77.098, 79.361},
     3.0974920148139935, 0.0043053659792585105},
    {{90.615, 85.728},
     {90.777, 85.487},
     0.19602977667491905, 0.8767662390186813},
    {{83.789, 74.858, 86.83, 80.647, 71.371},
     {81.797, 74.863, 88.623, 86.849, 75.827},
     -1.4173479418408086, 0.22934814506732398},
    {{81.443, 75.878, 81.917, 83.719, 74.026, 92.038, 92.953, 81.17, 85.561, 66.504},
     {67.705, 70.092, 77.687, 88.101, 74.558, 86.971, 91.861, 80.527, 81.094, 62.244},
     2.267059646705965, 0.04960092201846596},
    {{87.462, 74.686, 90.444, 99.407, 68.283, 78.458, 66.291, 73.513, 80.63, 80.642, 58.804, 89.705, 84.978, 79.32, 76.894, 69.556, 84.597, 77.265, 72.232, 83.433, 84.858, 74.511, 89.908, 77.522, 89.09, 69.158, 93.51, 82.599, 66.594, 78.031},
     {92.469, 73.026, 93.815, 98.046, 70.451, 82.034, 65.708, 75.07, 80.272, 80.571, 61.282, 87.485, 84.029, 77.934, 80.061, 67.194, 81.207, 76.018, 68.5, 79.707, 84.298, 76.22, 90.712, 74.334, 87.758, 67.813, 96.761, 80.393, 67.012, 79.613},
     0.19672202838798394, 0.8454172626482385},
    {{76.299, 86.513},
     {78.941, 85.036},
     -0.28283563971837633, 0.824524513042261},
    {{74.326, 81.778, 70.399, 81.258, 84.298},
     {77.046, 81.596, 69.034, 82.482, 84.063},
     -0.6141741482941558, 0.5723128657613559},
    {{65.843, 74.772, 90.512, 71.212, 80.409, 79.278, 73.73, 68.979, 87.09, 92.764},
     {69.025, 76.249, 91.033, 74.407, 80.224, 81.086, 76.343, 73.194, 88.384, 96.824},
     -4.747289850219313, 0.0010481645885452992},
    {{85.992, 69.926, 84.747, 77.636, 73.581, 78.782, 77.298, 78.595, 78.205, 83.109, 64.446, 85.224, 80.004, 87.111, 75.28, 96.185, 92.807, 78.979, 71.031, 72.209, 91.431, 72.574, 89.969, 73.65, 77.59, 93.254, 81.102, 82.098, 71.662, 87.064},
     {84.636, 69.448, 84.031, 75.878, 77.28, 79.689, 75.46, 78.813, 76.151, 82.393, 66.478, 83.503, 79.57, 86.778, 71.406, 95.626, 93.413, 78.994, 70.537, 71.762, 90.706, 73.204, 90.732, 69.127, 74.532, 93.573, 78.872, 82.968, 70.203, 85.417},
     2.2378560637440787, 0.03307673276346688},
    {{87.998, 72.453},
     {89.694, 74.877},
     -5.659340659340689, 0.11134080786265384},
    {{84.252, 74.349, 82.356, 85.769, 89.941},
     {85.559, 76.025, 86.808, 89.415, 92.614},
     -4.669329475771214, 0.00952307380962216},
    {{80.75, 85.243, 77.967, 72.767, 69.627, 74.141, 77.319, 85.207, 76.85, 70.287},
     {84.159, 81.261, 77.706, 74.285, 68.78, 71.553, 77.077, 88.54, 77.802, 71.119},
     -0.2861688133910515, 0.7812266973599198},
    {{74.539, 78.567, 84.336, 81.885, 70.365, 84.477, 71.881, 84.794, 78.017, 74.142, 74.576, 97.933, 82.598, 77.732, 81.982, 81.171, 93.876, 86.108, 71.941, 72.3, 73.668, 81.542, 71.47, 81.193, 75.843, 91.828, 79.715, 91.732, 68.963, 71.031},
     {71.355, 78.003, 80.699, 86.118, 67.864, 81.458, 71.946, 84.063, 74.352, 66.656, 77.373, 87.951, 87.34, 73.431, 86.169, 77.116, 95.125, 82.289, 69.688, 68.917, 64.924, 79.6, 65.692, 85.446, 71.329, 87.594, 74.447, 87.579, 71.065, 72.795},
     2.906893484538427, 0.0069276839235787036},
    {{63.544, 73.219},
     {63.526, 73.402},
     -0.820895522388124, 0.5624175621124962},
    {{83.423, 84.188, 94.96, 69.053, 70.88},
     {83.453, 84.209, 92.839, 68.248, 66.897},
     1.8005440496465859, 0.14614583543297655},
    {{89.311, 85.635, 83.247, 79.635, 83.439, 86.887, 79.353, 72.515, 79.026, 69.091},
     {92.068, 88.022, 85.886, 82.835, 85.624, 89.61, 82.947, 74.591, 81.655, 70.652},
     -14.209788358292865, 1.803360255223543e-07},
    {{75.704, 66.621, 71.556, 72.125, 87.349, 92.801, 74.774, 83.455, 83.45, 79.195, 74.314, 91.608, 74.558, 65.212, 76.982, 81.043, 79.704, 76.325, 74.043, 86.36, 83.712, 68.225, 84.93, 94.293, 68.677, 91.923, 79.502, 72.474, 79.828, 76.406},
     {72.82, 71.39, 65.561, 70.464, 92.507, 94.9, 71.252, 72.288, 80.448, 78.566, 69.178, 92.402, 75.154, 66.562, 71.76, 81.734, 74.367, 68.967, 71.313, 81.004, 80.46, 69.025, 78.779, 83.979, 70.229, 89.626, 78.342, 67.426, 67.897, 69.943},
     3.777857268972203, 0.0007287197406657038},
    {{80.93, 79.322},
     {80.036, 84.196},
     -0.6900138696255183, 0.6154865121481744},
    {{68.381, 91.651, 91.684, 79.445, 84.979},
     {53.023, 92.179, 83.6, 80.977, 79.478},
     1.7463909879175104, 0.1556711106107729},
    {{75.754, 86.263, 76.225, 98.128, 67.908, 85.871, 67.183, 80.077, 73.221, 71.226},
     {70.807, 84.858, 75.45, 96.633, 65.458, 83.932, 64.225, 74.633, 71.365, 69.505},
     5.126260559165283, 0.0006227044192394477},
    {{74.102, 66.911, 86.433, 82.637, 85.579, 97.798, 84.151, 86.238, 73.135, 73.985, 80.371, 89.564, 82.968, 81.621, 87.424, 77.81, 73.762, 90.361, 79.24, 76.265, 89.233, 89.264, 69.373, 97.269, 99.234, 82.104, 70.282, 84.119, 85.583, 74.593},
     {67.935, 65.192, 83.298, 78.134, 83.299, 94.562, 84.899, 80.386, 73.544, 71.461, 78.822, 86.824, 79.595, 82.871, 86.222, 72.537, 73.102, 85.95, 77.357, 73.533, 85.151, 87.159, 66.015, 97.537, 95.883, 76.201, 66.359, 82.239, 84.219, 70.995},
     7.534348552777713, 2.6386437013837335e-08},
    {{87.246, 75.459},
     {87.672, 80.79},
     -1.1737003058103983, 0.4492356094121073},
};

}  // namespace reference
