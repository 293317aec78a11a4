#include "ntn/tx/polar.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ntn::tx {
namespace {

// Polar sequence Q_0^{1023}, ascending reliability.
constexpr std::array<int, 1024> kReliability = {
    0, 1, 2, 4, 8, 16, 32, 3, 5, 64, 9, 6, 17, 10, 18, 128,
    12, 33, 65, 20, 256, 34, 24, 36, 7, 129, 66, 512, 11, 40, 68, 130,
    19, 13, 48, 14, 72, 257, 21, 132, 35, 258, 26, 513, 80, 37, 25, 22,
    136, 260, 264, 38, 514, 96, 67, 41, 144, 28, 69, 42, 516, 49, 74, 272,
    160, 520, 288, 528, 192, 544, 70, 44, 131, 81, 50, 73, 15, 320, 133, 52,
    23, 134, 384, 76, 137, 82, 56, 27, 97, 39, 259, 84, 138, 145, 261, 29,
    43, 98, 515, 88, 140, 30, 146, 71, 262, 265, 161, 576, 45, 100, 640, 51,
    148, 46, 75, 266, 273, 517, 104, 162, 53, 193, 152, 77, 164, 768, 268, 274,
    518, 54, 83, 57, 521, 112, 135, 78, 289, 194, 85, 276, 522, 58, 168, 139,
    99, 86, 60, 280, 89, 290, 529, 524, 196, 141, 101, 147, 176, 142, 530, 321,
    31, 200, 90, 545, 292, 322, 532, 263, 149, 102, 105, 304, 296, 163, 92, 47,
    267, 385, 546, 324, 208, 386, 150, 153, 165, 106, 55, 328, 536, 577, 548, 113,
    154, 79, 269, 108, 578, 224, 166, 519, 552, 195, 270, 641, 523, 275, 580, 291,
    59, 169, 560, 114, 277, 156, 87, 197, 116, 170, 61, 531, 525, 642, 281, 278,
    526, 177, 293, 388, 91, 584, 769, 198, 172, 120, 201, 336, 62, 282, 143, 103,
    178, 294, 93, 644, 202, 592, 323, 392, 297, 770, 107, 180, 151, 209, 284, 648,
    94, 204, 298, 400, 608, 352, 325, 533, 155, 210, 305, 547, 300, 109, 184, 534,
    537, 115, 167, 225, 326, 306, 772, 157, 656, 329, 110, 117, 212, 171, 776, 330,
    226, 549, 538, 387, 308, 216, 416, 271, 279, 158, 337, 550, 672, 118, 332, 579,
    540, 389, 173, 121, 553, 199, 784, 179, 228, 338, 312, 704, 390, 174, 554, 581,
    393, 283, 122, 448, 353, 561, 203, 63, 340, 394, 527, 582, 556, 181, 295, 285,
    232, 124, 205, 182, 643, 562, 286, 585, 299, 354, 211, 401, 185, 396, 344, 586,
    645, 593, 535, 240, 206, 95, 327, 564, 800, 402, 356, 307, 301, 417, 213, 568,
    832, 588, 186, 646, 404, 227, 896, 594, 418, 302, 649, 771, 360, 539, 111, 331,
    214, 309, 188, 449, 217, 408, 609, 596, 551, 650, 229, 159, 420, 310, 541, 773,
    610, 657, 333, 119, 600, 339, 218, 368, 652, 230, 391, 313, 450, 542, 334, 233,
    555, 774, 175, 123, 658, 612, 341, 777, 220, 314, 424, 395, 673, 583, 355, 287,
    183, 234, 125, 557, 660, 616, 342, 316, 241, 778, 563, 345, 452, 397, 403, 207,
    674, 558, 785, 432, 357, 187, 236, 664, 624, 587, 780, 705, 126, 242, 565, 398,
    346, 456, 358, 405, 303, 569, 244, 595, 189, 566, 676, 361, 706, 589, 215, 786,
    647, 348, 419, 406, 464, 680, 801, 362, 590, 409, 570, 788, 597, 572, 219, 311,
    708, 598, 601, 651, 421, 792, 802, 611, 602, 410, 231, 688, 653, 248, 369, 190,
    364, 654, 659, 335, 480, 315, 221, 370, 613, 422, 425, 451, 614, 543, 235, 412,
    343, 372, 775, 317, 222, 426, 453, 237, 559, 833, 804, 712, 834, 661, 808, 779,
    617, 604, 433, 720, 816, 836, 347, 897, 243, 662, 454, 318, 675, 618, 898, 781,
    376, 428, 665, 736, 567, 840, 625, 238, 359, 457, 399, 787, 591, 678, 434, 677,
    349, 245, 458, 666, 620, 363, 127, 191, 782, 407, 436, 626, 571, 465, 681, 246,
    707, 350, 599, 668, 790, 460, 249, 682, 573, 411, 803, 789, 709, 365, 440, 628,
    689, 374, 423, 466, 793, 250, 371, 481, 574, 413, 603, 366, 468, 655, 900, 805,
    615, 684, 710, 429, 794, 252, 373, 605, 848, 690, 713, 632, 482, 806, 427, 904,
    414, 223, 663, 692, 835, 619, 472, 455, 796, 809, 714, 721, 837, 716, 864, 810,
    606, 912, 722, 696, 377, 435, 817, 319, 621, 812, 484, 430, 838, 667, 488, 239,
    378, 459, 622, 627, 437, 380, 818, 461, 496, 669, 679, 724, 841, 629, 351, 467,
    438, 737, 251, 462, 442, 441, 469, 247, 683, 842, 738, 899, 670, 783, 849, 820,
    728, 928, 791, 367, 901, 630, 685, 844, 633, 711, 253, 691, 824, 902, 686, 740,
    850, 375, 444, 470, 483, 415, 485, 905, 795, 473, 634, 744, 852, 960, 865, 693,
    797, 906, 715, 807, 474, 636, 694, 254, 717, 575, 913, 798, 811, 379, 697, 431,
    607, 489, 866, 723, 486, 908, 718, 813, 476, 856, 839, 725, 698, 914, 752, 868,
    819, 814, 439, 929, 490, 623, 671, 739, 916, 463, 843, 381, 497, 930, 821, 726,
    961, 872, 492, 631, 729, 700, 443, 741, 845, 920, 382, 822, 851, 730, 498, 880,
    742, 445, 471, 635, 932, 687, 903, 825, 500, 846, 745, 826, 732, 446, 962, 936,
    475, 853, 867, 637, 907, 487, 695, 746, 828, 753, 854, 857, 504, 799, 255, 964,
    909, 719, 477, 915, 638, 748, 944, 869, 491, 699, 754, 858, 478, 968, 383, 910,
    815, 976, 870, 917, 727, 493, 873, 701, 931, 756, 860, 499, 731, 823, 922, 874,
    918, 502, 933, 743, 760, 881, 494, 702, 921, 501, 876, 847, 992, 447, 733, 827,
    934, 882, 937, 963, 747, 505, 855, 924, 734, 829, 965, 938, 884, 506, 749, 945,
    966, 755, 859, 940, 830, 911, 871, 639, 888, 479, 946, 750, 969, 508, 861, 757,
    970, 919, 875, 862, 758, 948, 977, 923, 972, 761, 877, 952, 495, 703, 935, 978,
    883, 762, 503, 925, 878, 735, 993, 885, 939, 994, 980, 926, 764, 941, 967, 886,
    831, 947, 507, 889, 984, 751, 942, 996, 971, 890, 509, 949, 973, 1000, 892, 950,
    863, 759, 1008, 510, 979, 953, 763, 974, 954, 879, 981, 982, 927, 995, 765, 956,
    887, 985, 997, 986, 943, 891, 998, 766, 511, 988, 1001, 951, 1002, 893, 975, 894,
    1009, 955, 1004, 1010, 957, 983, 958, 987, 1012, 999, 1016, 767, 989, 1003, 990, 1005,
    959, 1011, 1013, 895, 1006, 1014, 1017, 1018, 991, 1020, 1007, 1015, 1019, 1021, 1022, 1023,
};

// Input bit interleaver pattern for K_IL_max = 164.
constexpr std::array<int, 164> kInputInterleaverMax = {
    0,   2,   4,   7,   9,   14,  19,  20,  24,  25,  26,  28,  31,  34,  42,  45,  49,  50,  51,
    53,  54,  56,  58,  59,  61,  62,  65,  66,  67,  69,  70,  71,  72,  76,  77,  81,  82,  83,
    87,  88,  89,  91,  93,  95,  98,  101, 104, 106, 108, 110, 111, 113, 115, 118, 119, 120, 122,
    123, 126, 127, 129, 132, 134, 138, 139, 140, 1,   3,   5,   8,   10,  15,  21,  27,  29,  32,
    35,  43,  46,  52,  55,  57,  60,  63,  68,  73,  78,  84,  90,  92,  94,  96,  99,  102, 105,
    107, 109, 112, 114, 116, 121, 124, 128, 130, 133, 135, 141, 6,   11,  16,  22,  30,  33,  36,
    44,  47,  64,  74,  79,  85,  97,  100, 103, 117, 125, 131, 136, 142, 12,  17,  23,  37,  48,
    75,  80,  86,  137, 143, 13,  18,  38,  144, 39,  145, 40,  146, 41,  147, 148, 149, 150, 151,
    152, 153, 154, 155, 156, 157, 158, 159, 160, 161, 162, 163};

constexpr std::array<int, 32> kSubblockPattern = {0,  1,  2,  4,  3,  5,  6,  7,  8,  16, 9,
                                                  17, 10, 18, 11, 19, 12, 20, 13, 21, 14, 22,
                                                  15, 23, 24, 25, 26, 28, 27, 29, 30, 31};

int mother_code_log2(int k, int e, int n_max) {
  const int ceil_log2_e = static_cast<int>(std::ceil(std::log2(static_cast<double>(e))));
  int n1 = ceil_log2_e;
  if (e <= (9.0 / 8.0) * std::ldexp(1.0, ceil_log2_e - 1) && 16.0 * k < 9.0 * e) {
    n1 = ceil_log2_e - 1;
  }
  const int n2 = static_cast<int>(std::ceil(std::log2(8.0 * k)));
  return std::max(std::min({n1, n2, n_max}), 5);
}

inline double f_node(double a, double b) {
  const double m = std::min(std::abs(a), std::abs(b));
  return ((a < 0) != (b < 0)) ? -m : m;
}

inline double g_node(double a, double b, std::uint8_t u) { return u ? b - a : b + a; }

// Successive-cancellation list decoder state. Every path keeps its own copy
// of the LLR and partial-sum stacks; the tree walk is shared by all paths.
class ListDecoder {
 public:
  ListDecoder(int log2n, const std::vector<std::uint8_t>& frozen, int list_size)
      : log2n_(log2n), n_(1 << log2n), frozen_(frozen), list_size_(list_size) {}

  struct Path {
    std::vector<std::vector<double>> alpha;  // alpha[level] has 2^level LLRs
    std::vector<std::vector<std::uint8_t>> beta;
    std::vector<std::vector<std::uint8_t>> left;
    std::vector<std::uint8_t> u;
    double metric = 0.0;
  };

  std::vector<Path> run(std::span<const double> llr) {
    Path root;
    root.alpha.resize(log2n_ + 1);
    root.beta.resize(log2n_ + 1);
    root.left.resize(log2n_ + 1);
    for (int l = 0; l <= log2n_; ++l) {
      root.alpha[l].assign(std::size_t{1} << l, 0.0);
      root.beta[l].assign(std::size_t{1} << l, 0);
      root.left[l].assign(std::size_t{1} << l, 0);
    }
    root.alpha[log2n_].assign(llr.begin(), llr.end());
    root.u.assign(n_, 0);
    paths_.clear();
    paths_.push_back(std::move(root));
    leaf_ = 0;
    node(log2n_);
    std::stable_sort(paths_.begin(), paths_.end(),
                     [](const Path& a, const Path& b) { return a.metric < b.metric; });
    return std::move(paths_);
  }

 private:
  void node(int level) {
    if (level == 0) {
      leaf();
      return;
    }
    const std::size_t half = std::size_t{1} << (level - 1);
    for (auto& p : paths_) {
      const auto& a = p.alpha[level];
      auto& c = p.alpha[level - 1];
      for (std::size_t j = 0; j < half; ++j) c[j] = f_node(a[j], a[j + half]);
    }
    node(level - 1);
    for (auto& p : paths_) {
      p.left[level].assign(p.beta[level - 1].begin(), p.beta[level - 1].end());
      const auto& a = p.alpha[level];
      auto& c = p.alpha[level - 1];
      for (std::size_t j = 0; j < half; ++j) c[j] = g_node(a[j], a[j + half], p.left[level][j]);
    }
    node(level - 1);
    for (auto& p : paths_) {
      auto& b = p.beta[level];
      const auto& bl = p.left[level];
      const auto& br = p.beta[level - 1];
      for (std::size_t j = 0; j < half; ++j) {
        b[j] = bl[j] ^ br[j];
        b[j + half] = br[j];
      }
    }
  }

  void leaf() {
    const int i = leaf_++;
    if (frozen_[i]) {
      for (auto& p : paths_) {
        const double llr = p.alpha[0][0];
        if (llr < 0) p.metric += -llr;
        p.beta[0][0] = 0;
        p.u[i] = 0;
      }
      return;
    }
    struct Candidate {
      std::size_t path;
      std::uint8_t bit;
      double metric;
    };
    std::vector<Candidate> cands;
    cands.reserve(paths_.size() * 2);
    for (std::size_t pi = 0; pi < paths_.size(); ++pi) {
      const double llr = paths_[pi].alpha[0][0];
      const double m = paths_[pi].metric;
      cands.push_back({pi, 0, m + (llr < 0 ? -llr : 0.0)});
      cands.push_back({pi, 1, m + (llr >= 0 ? llr : 0.0)});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.metric < b.metric; });
    if (cands.size() > static_cast<std::size_t>(list_size_)) cands.resize(list_size_);
    std::vector<Path> next;
    next.reserve(cands.size());
    for (const auto& c : cands) {
      Path p = paths_[c.path];
      p.metric = c.metric;
      p.beta[0][0] = c.bit;
      p.u[i] = c.bit;
      next.push_back(std::move(p));
    }
    paths_ = std::move(next);
  }

  int log2n_;
  int n_;
  const std::vector<std::uint8_t>& frozen_;
  int list_size_;
  std::vector<Path> paths_;
  int leaf_ = 0;
};

}  // namespace

std::span<const int> polar_reliability_sequence() { return kReliability; }

PolarCode::PolarCode(int k, int e, int n_max) : k_(k), e_(e) {
  if (k <= 0 || k > static_cast<int>(kInputInterleaverMax.size())) {
    throw std::invalid_argument("polar K out of supported range: " + std::to_string(k));
  }
  const int log2n = mother_code_log2(k, e, n_max);
  n_ = 1 << log2n;
  if (e < n_) {
    throw std::invalid_argument("only repetition rate matching (E >= N) is supported");
  }

  const int offset = static_cast<int>(kInputInterleaverMax.size()) - k;
  for (const int p : kInputInterleaverMax) {
    if (p >= offset) input_perm_.push_back(p - offset);
  }

  subblock_perm_.resize(n_);
  const int block = n_ / 32;
  for (int i = 0; i < n_; ++i) {
    subblock_perm_[i] = kSubblockPattern[(32 * i) / n_] * block + i % block;
  }

  std::vector<int> q;
  q.reserve(n_);
  for (const int idx : kReliability) {
    if (idx < n_) q.push_back(idx);
  }
  info_positions_.assign(q.end() - k, q.end());
  std::sort(info_positions_.begin(), info_positions_.end());
  frozen_.assign(n_, 1);
  for (const int idx : info_positions_) frozen_[idx] = 0;
}

Bits PolarCode::interleave_input(std::span<const std::uint8_t> c) const {
  Bits out(k_);
  for (int i = 0; i < k_; ++i) out[i] = c[input_perm_[i]];
  return out;
}

Bits PolarCode::deinterleave_input(std::span<const std::uint8_t> c) const {
  Bits out(k_);
  for (int i = 0; i < k_; ++i) out[input_perm_[i]] = c[i];
  return out;
}

Bits PolarCode::encode(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) != k_) {
    throw std::invalid_argument("polar encoder expects " + std::to_string(k_) +
                                " bits, got " + std::to_string(bits.size()));
  }
  const Bits c = interleave_input(bits);
  Bits x(n_, 0);
  for (int i = 0; i < k_; ++i) x[info_positions_[i]] = c[i] & 1U;
  for (int len = 1; len < n_; len <<= 1) {
    for (int start = 0; start < n_; start += 2 * len) {
      for (int j = start; j < start + len; ++j) x[j] ^= x[j + len];
    }
  }
  Bits out(e_);
  for (int i = 0; i < e_; ++i) out[i] = x[subblock_perm_[i % n_]];
  return out;
}

Bits PolarCode::decode(std::span<const double> llrs, int list_size,
                       const std::function<bool(const Bits&)>& accept) const {
  if (static_cast<int>(llrs.size()) != e_) {
    throw std::invalid_argument("polar decoder expects " + std::to_string(e_) +
                                " LLRs, got " + std::to_string(llrs.size()));
  }
  if (list_size < 1) throw std::invalid_argument("list size must be >= 1");
  std::vector<double> mother(n_, 0.0);
  for (int i = 0; i < e_; ++i) mother[subblock_perm_[i % n_]] += llrs[i];

  ListDecoder dec(std::countr_zero(static_cast<unsigned>(n_)), frozen_, list_size);
  const auto paths = dec.run(mother);

  auto extract = [&](const std::vector<std::uint8_t>& u) {
    Bits c(k_);
    for (int i = 0; i < k_; ++i) c[i] = u[info_positions_[i]];
    return deinterleave_input(c);
  };
  if (accept) {
    for (const auto& p : paths) {
      Bits candidate = extract(p.u);
      if (accept(candidate)) return candidate;
    }
  }
  return extract(paths.front().u);
}

const PolarCode& pbch_polar_code() {
  static const PolarCode code(kPayloadBits + kCrcBits, kPbchCodedBits);
  return code;
}

Bits pbch_encode(std::span<const std::uint8_t> bits56) {
  if (bits56.size() != static_cast<std::size_t>(kPayloadBits + kCrcBits)) {
    throw std::invalid_argument("pbch_encode expects 56 bits, got " +
                                std::to_string(bits56.size()));
  }
  return pbch_polar_code().encode(bits56);
}

Bits pbch_decode(std::span<const double> llrs864, int list_size,
                 const std::function<bool(const Bits&)>& accept) {
  return pbch_polar_code().decode(llrs864, list_size, accept);
}

Bits pbch_decode_bits(std::span<const std::uint8_t> bits864) {
  std::vector<double> llr(bits864.size());
  for (std::size_t i = 0; i < bits864.size(); ++i) llr[i] = bits864[i] ? -1.0 : 1.0;
  return pbch_decode(llr);
}

}  // namespace ntn::tx
