#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shac/analysis.hpp"
#include "shac/cascade.hpp"
#include "shac/errors.hpp"
#include "shac/experiment.hpp"
#include "shac/gbt.hpp"
#include "shac/objective.hpp"
#include "shac/optimizer.hpp"
#include "shac/random_search.hpp"
#include "shac/search_space.hpp"
#include "shac/trial_log.hpp"

namespace py = pybind11;
using namespace shac;

namespace {

ShacParams params_from_kwargs(int max_classifiers_cap, bool cv_enabled, int cv_folds,
                              double cv_threshold, std::int64_t max_attempts, int gbt_n_rounds,
                              int gbt_max_depth, double gbt_learning_rate) {
    ShacParams p;
    p.max_classifiers_cap = max_classifiers_cap;
    p.cv_enabled = cv_enabled;
    p.cv_folds = cv_folds;
    p.cv_threshold = cv_threshold;
    p.max_attempts = max_attempts;
    p.gbt.n_rounds = gbt_n_rounds;
    p.gbt.max_depth = gbt_max_depth;
    p.gbt.learning_rate = gbt_learning_rate;
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Parallel black-box optimization with classifier cascades";

    py::register_exception<Error>(m, "ShacError", PyExc_RuntimeError);

    py::enum_<Direction>(m, "Direction")
        .value("MAXIMIZE", Direction::kMaximize)
        .value("MINIMIZE", Direction::kMinimize);

    py::class_<ContinuousUniform>(m, "ContinuousUniform")
        .def(py::init<double, double>(), py::arg("low"), py::arg("high"))
        .def_readonly("low", &ContinuousUniform::low)
        .def_readonly("high", &ContinuousUniform::high);
    py::class_<DiscreteOrdinal>(m, "DiscreteOrdinal")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_readonly("values", &DiscreteOrdinal::values);
    py::class_<Categorical>(m, "Categorical")
        .def(py::init<int>(), py::arg("n_choices"))
        .def_readonly("n_choices", &Categorical::n_choices);

    py::class_<Point>(m, "Point")
        .def(py::init([](std::vector<double> coords) { return Point{std::move(coords)}; }),
             py::arg("coords"))
        .def_readonly("coords", &Point::coords)
        .def("__eq__", [](const Point& a, const Point& b) { return a == b; })
        .def("__repr__", [](const Point& p) {
            std::string s = "Point([";
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                s += (i ? ", " : "") + std::to_string(p.coords[i]);
            }
            return s + "])";
        });

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform", &Rng::uniform)
        .def("uniform_index", &Rng::uniform_index, py::arg("n"));

    py::class_<SearchSpace>(m, "SearchSpace")
        .def(py::init<std::vector<ParamDomain>>(), py::arg("dims"))
        .def_property_readonly("n_dims", &SearchSpace::n_dims)
        .def_property_readonly("feature_length", &SearchSpace::feature_length)
        .def_property_readonly("fully_discrete", &SearchSpace::is_fully_discrete)
        .def("contains", &SearchSpace::contains, py::arg("point"))
        .def("sample_prior", &SearchSpace::sample_prior, py::arg("rng"))
        .def("encode", &SearchSpace::encode, py::arg("point"));

    m.def("branin", &branin, py::arg("x1"), py::arg("x2"));
    m.def("hartmann6", [](const std::vector<double>& x) { return hartmann6(x); }, py::arg("x"));

    py::class_<Objective>(m, "Objective")
        .def_readonly("name", &Objective::name)
        .def_readonly("direction", &Objective::direction)
        .def_readonly("space", &Objective::space)
        .def("evaluate", [](const Objective& o, const Point& p) { return o.evaluate(p); },
             py::arg("point"));
    m.def("objective_by_name", &objective_by_name, py::arg("name"));
    m.def("as_maximization", &as_maximization, py::arg("objective"));

    py::class_<BudgetConfig>(m, "BudgetConfig")
        .def(py::init([](std::int64_t n, int w) { return BudgetConfig{n, w}; }), py::arg("n"),
             py::arg("w"))
        .def_readonly("total_budget", &BudgetConfig::total_budget)
        .def_readonly("workers", &BudgetConfig::workers)
        .def("batches", &BudgetConfig::batches);

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("batches", &Schedule::batches)
        .def_readonly("max_classifiers", &Schedule::max_classifiers)
        .def_readonly("classifier_budget", &Schedule::classifier_budget);
    m.def("derive_schedule", &derive_schedule, py::arg("budget"), py::arg("max_classifiers_cap"));

    py::class_<GbtConfig>(m, "GbtConfig")
        .def(py::init<>())
        .def_readwrite("n_rounds", &GbtConfig::n_rounds)
        .def_readwrite("max_depth", &GbtConfig::max_depth)
        .def_readwrite("learning_rate", &GbtConfig::learning_rate)
        .def_readwrite("l2_leaf_penalty", &GbtConfig::l2_leaf_penalty)
        .def_readwrite("min_child_hessian", &GbtConfig::min_child_hessian)
        .def_readwrite("min_split_gain", &GbtConfig::min_split_gain);

    py::class_<LabeledDataset>(m, "LabeledDataset")
        .def(py::init<>())
        .def("add", &LabeledDataset::add, py::arg("features"), py::arg("label"))
        .def_property_readonly("size", &LabeledDataset::size)
        .def_property_readonly("feature_len", &LabeledDataset::feature_len);

    py::class_<GbtModel>(m, "GbtModel")
        .def("margin", [](const GbtModel& model, const std::vector<double>& x) {
                 return model.margin(x);
             }, py::arg("features"))
        .def("predict_label", [](const GbtModel& model, const std::vector<double>& x) {
                 return model.predict_label(x);
             }, py::arg("features"))
        .def_property_readonly("n_trees", &GbtModel::n_trees)
        .def("to_json", [](const GbtModel& model) { return model.to_json().dump(); });

    m.def("fit", &fit, py::arg("dataset"), py::arg("config") = GbtConfig{});
    m.def("cross_val_accuracy",
          [](const LabeledDataset& d, int k, const GbtConfig& c, std::uint64_t seed) {
              Rng rng(seed);
              return cross_val_accuracy(d, k, c, rng);
          },
          py::arg("dataset"), py::arg("k") = 5, py::arg("config") = GbtConfig{},
          py::arg("seed") = 0);

    py::class_<SampleOutcome>(m, "SampleOutcome")
        .def_readonly("point", &SampleOutcome::point)
        .def_readonly("attempts", &SampleOutcome::attempts);

    py::class_<Cascade>(m, "Cascade")
        .def(py::init<SearchSpace>(), py::arg("space"))
        .def_property_readonly("size", &Cascade::size)
        .def("append_model",
             [](Cascade& c, const GbtModel& model) { c.append(classifier_from_model(model)); },
             py::arg("model"))
        .def("passes", &Cascade::passes, py::arg("point"))
        .def("sample_accepted", &Cascade::sample_accepted, py::arg("rng"),
             py::arg("max_attempts"));

    py::class_<Proposal>(m, "Proposal")
        .def_readonly("point", &Proposal::point)
        .def_readonly("attempts", &Proposal::attempts)
        .def_readonly("cascade_size", &Proposal::cascade_size);

    py::class_<TellReport>(m, "TellReport")
        .def_readonly("trained", &TellReport::trained)
        .def_readonly("adopted", &TellReport::adopted)
        .def_readonly("cv_accuracy", &TellReport::cv_accuracy)
        .def_readonly("degenerate_buffer", &TellReport::degenerate_buffer)
        .def_readonly("cascade_size", &TellReport::cascade_size)
        .def_readonly("frozen", &TellReport::frozen);

    py::class_<ShacConfig>(m, "ShacConfig")
        .def(py::init<>())
        .def_readwrite("budget", &ShacConfig::budget)
        .def_readwrite("max_classifiers_cap", &ShacConfig::max_classifiers_cap)
        .def_readwrite("cv_folds", &ShacConfig::cv_folds)
        .def_readwrite("cv_enabled", &ShacConfig::cv_enabled)
        .def_readwrite("cv_threshold", &ShacConfig::cv_threshold)
        .def_readwrite("gbt", &ShacConfig::gbt)
        .def_readwrite("max_attempts", &ShacConfig::max_attempts)
        .def_readwrite("seed", &ShacConfig::seed);

    py::class_<ShacOptimizer>(m, "ShacOptimizer")
        .def(py::init<SearchSpace, ShacConfig>(), py::arg("space"), py::arg("config"))
        .def_property_readonly("schedule", &ShacOptimizer::schedule)
        .def_property_readonly("frozen", &ShacOptimizer::frozen)
        .def_property_readonly("trials_issued", &ShacOptimizer::trials_issued)
        .def_property_readonly("batches_completed", &ShacOptimizer::batches_completed)
        .def("done", &ShacOptimizer::done)
        .def("ask", &ShacOptimizer::ask)
        .def("tell",
             [](ShacOptimizer& o, const std::vector<double>& values) { return o.tell(values); },
             py::arg("values"));

    py::class_<RandomSearchOptimizer>(m, "RandomSearchOptimizer")
        .def(py::init<SearchSpace, BudgetConfig, std::uint64_t>(), py::arg("space"),
             py::arg("budget"), py::arg("seed"))
        .def("done", &RandomSearchOptimizer::done)
        .def("ask", &RandomSearchOptimizer::ask)
        .def("tell", [](RandomSearchOptimizer& o, const std::vector<double>& values) {
                 o.tell(values);
             }, py::arg("values"));

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("trial", &TrialRecord::trial)
        .def_readonly("batch", &TrialRecord::batch)
        .def_readonly("point", &TrialRecord::point)
        .def_readonly("value", &TrialRecord::value)
        .def_readonly("attempts", &TrialRecord::attempts)
        .def_readonly("cascade_size", &TrialRecord::cascade_size);

    py::class_<AdoptionEvent>(m, "AdoptionEvent")
        .def_readonly("batch", &AdoptionEvent::batch)
        .def_readonly("cascade_size", &AdoptionEvent::cascade_size)
        .def_readonly("cv_accuracy", &AdoptionEvent::cv_accuracy);

    py::class_<TrialLog>(m, "TrialLog")
        .def_property_readonly("records", &TrialLog::records)
        .def_property_readonly("adoptions", &TrialLog::adoptions)
        .def("__len__", &TrialLog::size);

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("best_value", &RunSummary::best_value)
        .def_readonly("top5_mean", &RunSummary::top5_mean)
        .def_readonly("per_batch_median", &RunSummary::per_batch_median)
        .def_readonly("n_trials", &RunSummary::n_trials);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("log", &RunResult::log)
        .def_readonly("summary", &RunResult::summary);

    m.def("top_k_mean", &top_k_mean, py::arg("log"), py::arg("k"), py::arg("direction"));
    m.def("per_batch_median", &per_batch_median, py::arg("log"));
    m.def("select_shortlist", &select_shortlist, py::arg("log"), py::arg("size"),
          py::arg("direction"));
    m.def("hamming_histogram",
          [](const SearchSpace& space, const std::vector<Point>& points) {
              return hamming_histogram(space, points);
          },
          py::arg("space"), py::arg("points"));

    m.def("run",
          [](const std::string& algorithm, const std::string& objective, std::int64_t n, int w,
             std::uint64_t seed, int max_classifiers_cap, bool cv_enabled, int cv_folds,
             double cv_threshold, std::int64_t max_attempts, int gbt_n_rounds, int gbt_max_depth,
             double gbt_learning_rate) {
              RunSpec spec;
              spec.algorithm = algorithm_from_name(algorithm);
              spec.objective = objective_by_name(objective);
              spec.budget = BudgetConfig{n, w};
              spec.seed = seed;
              spec.shac = params_from_kwargs(max_classifiers_cap, cv_enabled, cv_folds,
                                             cv_threshold, max_attempts, gbt_n_rounds,
                                             gbt_max_depth, gbt_learning_rate);
              return run_single(spec);
          },
          py::arg("algorithm"), py::arg("objective"), py::arg("n"), py::arg("w"),
          py::arg("seed") = 1, py::arg("max_classifiers_cap") = 18, py::arg("cv_enabled") = false,
          py::arg("cv_folds") = 5, py::arg("cv_threshold") = 0.5, py::arg("max_attempts") = 0,
          py::arg("gbt_n_rounds") = 200, py::arg("gbt_max_depth") = 6,
          py::arg("gbt_learning_rate") = 0.3,
          "Run one seed of an algorithm on a named objective and return its log and summary");
}
