from django.urls import path
from .views import ExperimentRunDetailView, ExperimentRunListView

urlpatterns = [
    path("runs/", ExperimentRunListView.as_view(), name="experiment_run_list"),
    path("runs/<int:pk>/", ExperimentRunDetailView.as_view(), name="experiment_run_detail"),
]
