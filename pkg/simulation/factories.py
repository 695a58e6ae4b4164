import factory

from .models import ExperimentCell, ExperimentRun


class ExperimentRunFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = ExperimentRun

    name = factory.Sequence(lambda n: f"experiment_{n}")
    distribution = 'dagum:sigma=1,a=2,b=1'
    sample_sizes = factory.LazyFunction(lambda: [50, 100])
    schemes = factory.LazyFunction(lambda: ['E', 'HF'])
    kinds = factory.LazyFunction(lambda: ['qZI', 'qDI'])
    replications = 100
    mise_grid = 512
    master_seed = '20240917'
    exact_indices = factory.LazyFunction(lambda: {'qZI': 0.7344, 'qDI': 0.6137})
    status = 'COMPLETED'


class ExperimentCellFactory(factory.django.DjangoModelFactory):
    class Meta:
        model = ExperimentCell

    run = factory.SubFactory(ExperimentRunFactory)
    kind = 'qZI'
    scheme = 'HF'
    sample_size = factory.Sequence(lambda n: 50 + n)
    exact_index = 0.7344
    index_median = 0.73
    index_q1 = 0.71
    index_q3 = 0.75
    index_mse = 0.0012
    curve_mise = 0.0031
