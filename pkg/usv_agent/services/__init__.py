from usv_agent.services.artifact_service import ArtifactService
from usv_agent.services.dataset_service import DatasetService

__all__ = ['ArtifactService', 'DatasetService']
