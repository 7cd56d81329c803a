// Published reference values for the BCH coefficient sums, kept verbatim as
// rendered strings so comparisons are rendering-exact.

#ifndef QBCH_REFERENCE_TABLE_HPP
#define QBCH_REFERENCE_TABLE_HPP

#include <array>
#include <string_view>

namespace qbch {

struct ReferenceRow {
    int degree;
    std::string_view a_dec;    // four decimals
    std::string_view b_dec;    // four decimals, or mantissa-exponent below 1e-3
    std::string_view catalan;  // 4^{n-1}/n, four decimals
};

inline constexpr std::array<ReferenceRow, 20> kReferenceRows{{
    {1, "2.0000", "2.0000", "1.0000"},
    {2, "1.0000", "0.5000", "2.0000"},
    {3, "0.6667", "0.1667", "5.3333"},
    {4, "0.4167", "0.0833", "16.0000"},
    {5, "0.2756", "0.0417", "51.2000"},
    {6, "0.1924", "0.0208", "170.6667"},
    {7, "0.1367", "0.0104", "585.1429"},
    {8, "0.0992", "0.0052", "2048.0000"},
    {9, "0.0724", "0.0026", "7281.7778"},
    {10, "0.0534", "0.0013", "26214.4000"},
    {11, "0.0397", "6.7e-04", "95325.0909"},
    {12, "0.0297", "3.3e-04", "349525.3333"},
    {13, "0.0224", "1.6e-04", "1290555.0769"},
    {14, "0.0170", "8.1e-05", "4793490.2857"},
    {15, "0.0129", "4.0e-05", "17895697.0667"},
    {16, "0.0099", "2.0e-05", "67108864.0000"},
    {17, "0.0076", "1.0e-05", "252645135.0588"},
    {18, "0.0058", "5.0e-06", "954437176.8889"},
    {19, "0.0045", "2.4e-06", "3616814565.0526"},
    {20, "0.0035", "1.2e-06", "13743895347.2000"},
}};

/// Reference growth rates fitted to the A and B columns, as (value, half-width).
inline constexpr double kReferenceRateA = 0.36;
inline constexpr double kReferenceRateAHalfWidth = 0.02;
inline constexpr double kReferenceRateB = 0.29;
inline constexpr double kReferenceRateBHalfWidth = 0.01;

}  // namespace qbch

#endif  // QBCH_REFERENCE_TABLE_HPP
