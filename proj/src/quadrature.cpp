#include "ustat/quadrature.hpp"

#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace ustat {

namespace {

double call_target(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double epsrel,
                 double epsabs) {
    constexpr size_t kLimit = 4096;
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(kLimit), gsl_integration_workspace_free);
    gsl_function target;
    target.function = &call_target;
    target.params = const_cast<std::function<double(double)>*>(&f);
    double result = 0.0, abserr = 0.0;
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    const int status = gsl_integration_qag(&target, a, b, epsabs, epsrel, kLimit,
                                           GSL_INTEG_GAUSS61, ws.get(), &result, &abserr);
    gsl_set_error_handler(old);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error("integrate: QAG failed with status " + std::to_string(status));
    return result;
}

}  // namespace ustat
