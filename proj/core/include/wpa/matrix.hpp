#ifndef wpa_matrix_hpp
#define wpa_matrix_hpp

#include <Eigen/Dense>

namespace wpa {

// weights and data are row-major 64-bit reals
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}

#endif /* wpa_matrix_hpp */
