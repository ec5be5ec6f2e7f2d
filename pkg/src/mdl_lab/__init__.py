"""Two-part MDL and Bayes-mixture prediction over countable model classes.

The library provides:

* ``measures``      -- semimeasures on finite strings and all built-in model
                       families (i.i.d., deterministic, factorizable, the
                       oscillating-martingale measure, leaky wrappers).
* ``model_class``   -- weighted countable hypothesis classes and the MAP
                       (two-part code-length) estimator with tie-breaking.
* ``predictors``    -- Bayes mixture, dynamic / static / hybrid MDL
                       predictors, and normalization.
* ``metrics``       -- instantaneous and cumulative square / Hellinger /
                       KL / absolute distances, exact expectation over the
                       true measure, and the bound-verification reports.
* ``decisions``     -- Bayes-optimal actions under arbitrary bounded loss
                       functions and the regret-bound machinery.
* ``stabilization`` -- MAP-choice traces, stabilization verdicts and class
                       profiles (factorizable / uniformly stochastic).
* ``conditional``   -- input-conditioned classification models and bounded
                       density regression with continuous Hellinger distance.
* ``coding``        -- the constructive two-part code (prefix header plus
                       exact arithmetic coding payload).
* ``experiments``   -- the registry of reproduction experiments driven by
                       the ``mdl-lab`` command line tool.

All core quantities can be computed in exact rational arithmetic ("exact"
mode); a log-domain float mode is available for long horizons.
"""

__version__ = "0.1.0"
