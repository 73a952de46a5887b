#include <stdio.h>
#include <string.h>
#include "fibercone.h"

#define CHECK(expr)                                                          \
    do {                                                                     \
        if (!(expr)) {                                                       \
            fprintf(stderr, "check failed: %s (%s)\n", #expr,               \
                    fc_last_error() ? fc_last_error() : "no error");         \
            return 1;                                                        \
        }                                                                    \
    } while (0)

int main(void) {
    FcProblem *problem = NULL;
    CHECK(fc_problem_builtin("hironaka1", &problem) == FC_STATUS_OK);

    int64_t apex[2] = {0, 1};
    FcReport *report = NULL;
    CHECK(fc_analyze(problem, apex, 2, 0, &report) == FC_STATUS_OK);
    double lo = 0, hi = 0;
    CHECK(fc_report_lambda(report, &lo, &hi) == FC_STATUS_OK);
    CHECK(lo < 2.6180339887498949 && 2.6180339887498949 < hi);
    bool real = false;
    CHECK(fc_report_totally_real(report, &real) == FC_STATUS_OK && real);
    char *minpoly = NULL;
    CHECK(fc_report_minpoly(report, &minpoly) == FC_STATUS_OK);
    CHECK(strcmp(minpoly, "t^2 - 3*t + 1") == 0);
    fc_string_free(minpoly);
    fc_report_free(report);

    int64_t bad[2] = {2, 4};
    CHECK(fc_analyze(problem, bad, 2, 0, &report) == FC_STATUS_NOT_PRIMITIVE);
    CHECK(fc_last_error() != NULL);

    FcScan *scan = NULL;
    CHECK(fc_scan(problem, 4, 1, &scan) == FC_STATUS_OK);
    size_t total = 0, tr = 0, ntr = 0, err = 0;
    CHECK(fc_scan_counts(scan, &total, &tr, &ntr, &err) == FC_STATUS_OK);
    CHECK(total == 7 && tr + ntr + err == 7);
    fc_scan_free(scan);
    fc_problem_free(problem);
    printf("ok\n");
    return 0;
}
